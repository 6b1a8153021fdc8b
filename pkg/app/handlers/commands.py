import logging
from typing import Any, Dict, List, Optional

from app.dsl.spec_parser import SpecFile, format_chain
from app.errors import ValidationError
from app.groups.chain import ChainGroup, coset_tree, rho, rho_profile
from app.groups.tsi import tsi_check
from app.ordinals.cnf import Ordinal, format_ordinal
from app.symbolic.calculus import rank_calculus
from app.symbolic.expr import ExampleKind, GroupExpr
from app.symbolic.hierarchy import describe_examples
from app.symbolic.truncate import truncate
from app.trees.export import tree_to_dot, tree_to_json, tree_to_records
from app.trees.wftree import tree_rank
from app.utils.text import safe_truncate, sanitize_name
from app.verify.suite import verifier

logger = logging.getLogger(__name__)


class LabCommands:
    """Commands shared by the CLI and the HTTP surface; every one returns a plain dict."""

    def cmd_rank(self, spec: SpecFile, name: str, alpha: Optional[Ordinal] = None) -> Dict[str, Any]:
        target = spec.lookup(name)
        if isinstance(target, ChainGroup):
            return self._chain_rank(name, target)
        return self.classify(target, alpha, name=name)

    def _chain_rank(self, name: str, group: ChainGroup) -> Dict[str, Any]:
        profile = rho_profile(group)
        logger.info(f"rank of chain {name}: orders {group.orders()}, rho {profile[-1]}")
        return {
            "name": name,
            "kind": "chain",
            "degree": group.degree,
            "orders": group.orders(),
            "rho_k": [format_ordinal(r) for r in profile],
            "rho": format_ordinal(rho(group)),
            "tsi": tsi_check(group).to_dict(),
        }

    def classify(self, expr: GroupExpr, alpha: Optional[Ordinal] = None, name: Optional[str] = None) -> Dict[str, Any]:
        c = rank_calculus.classify(expr)
        alpha = c.rank if alpha is None else alpha
        logger.info(f"classified {safe_truncate(str(expr))}: {c}")
        return {
            "name": name,
            "kind": "expression",
            "expr": str(expr),
            "rank": format_ordinal(c.rank),
            "tight": c.tight,
            "classification": str(c),
            "verdicts": rank_calculus.verdicts(expr, alpha),
        }

    def cmd_tree(self, spec: SpecFile, name: str, k: int, fmt: str = "json") -> Dict[str, Any]:
        group = spec.lookup(name)
        if not isinstance(group, ChainGroup):
            raise ValidationError(f"{name} is an expression; truncate it to a chain first")
        tree = coset_tree(group, k)
        if fmt == "dot":
            output = tree_to_dot(tree, sanitize_name(f"{name}_k{k}"))
        elif fmt == "json":
            output = tree_to_json(tree)
        else:
            raise ValidationError(f"unknown tree format {fmt!r}, expected json or dot")
        return {
            "name": name,
            "k": k,
            "format": fmt,
            "nodes": len(tree),
            "rank": format_ordinal(tree_rank(tree)),
            "records": tree_to_records(tree),
            "output": output,
        }

    def cmd_verify(
        self,
        spec: Optional[SpecFile] = None,
        seed: Optional[int] = None,
        trials: Optional[int] = None,
        mutant: Optional[str] = None,
        only: Optional[List[str]] = None,
    ) -> Dict[str, Any]:
        chains = list(spec.chains.values()) if spec else None
        exprs = list(spec.groups.values()) if spec else None
        report = verifier.run(seed=seed, trials=trials, chains=chains, exprs=exprs, mutant=mutant, only=only)
        return report.to_dict()

    def cmd_truncate(
        self, spec: SpecFile, name: str, depth: int, breadth: int, out: Optional[str] = None
    ) -> Dict[str, Any]:
        expr = spec.expr(name)
        group = truncate(expr, depth, breadth)
        chain_name = sanitize_name(f"{name}_d{depth}_b{breadth}")
        text = format_chain(chain_name, group) + "\n"
        if out:
            with open(out, "w", encoding="utf-8") as f:
                f.write(text)
            logger.info(f"wrote {chain_name} to {out}")
        return {
            "name": chain_name,
            "expr": str(expr),
            "degree": group.degree,
            "orders": group.orders(),
            "text": text,
            "path": out,
        }

    def cmd_examples(self, alpha: Ordinal, kind: Optional[str] = None) -> Dict[str, Any]:
        kinds = [ExampleKind(kind)] if kind else [ExampleKind.H, ExampleKind.G]
        return {"alpha": format_ordinal(alpha), "examples": describe_examples(alpha, kinds)}


commands = LabCommands()
