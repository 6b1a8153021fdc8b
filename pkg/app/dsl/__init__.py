# Group spec files
from app.dsl.spec_parser import SpecFile, format_chain, load_spec, parse_spec, print_spec
