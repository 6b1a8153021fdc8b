# Seeded property suite
from app.verify.suite import CheckResult, Verifier, VerifyReport, verifier
