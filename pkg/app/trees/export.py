"""
Export trees as JSON node arrays or as graphviz dot with rank annotations.

To render a dot export:

    dot -Tpng -O tree.gv
"""
import json
import logging
from typing import Any, Dict, List

from app.trees.wftree import WfTree, validate_tree
from app.utils.text import dot_escape, format_label

logger = logging.getLogger(__name__)


def tree_to_records(tree: WfTree) -> List[Dict[str, Any]]:
    records = []
    for node in tree:
        records.append({
            "id": node.id,
            "level": node.level,
            "parent": node.parent,
            "weight": str(node.weight) if node.weight is not None else None,
            "label": format_label(node.label) or None,
            "rank": str(tree.rank_of(node.id)),
        })
    return records


def tree_to_json(tree: WfTree, indent: int = 2) -> str:
    if tree.is_empty:
        logger.warning("exporting an empty tree")
    return json.dumps(tree_to_records(tree), indent=indent)


def tree_from_json(text: str) -> WfTree:
    """Read the JSON node array format; a `rank` key is ignored."""
    data = json.loads(text)
    if isinstance(data, dict):
        data = data.get("nodes", [])
    return validate_tree(data)


def tree_to_dot(tree: WfTree, name: str = "tree") -> str:
    lines: List[str] = []
    write_line = lines.append
    write_line(f'digraph "{dot_escape(name)}" {{')
    write_line('\tnode [shape=box, fontname="monospace"];')
    if tree.is_empty:
        logger.warning("exporting an empty tree")
    by_level: Dict[int, List[int]] = {}
    for node in tree:
        by_level.setdefault(node.level, []).append(node.id)
    for lvl in sorted(by_level):
        write_line("\t{")
        write_line("\t\trank = same;")
        for node_id in by_level[lvl]:
            node = tree.node(node_id)
            label = format_label(node.label) if node.label is not None else str(node_id)
            text = f"{dot_escape(label)}\\nlevel {node.level}, rank {tree.rank_of(node_id)}"
            if node.weight is not None and not node.weight.is_zero:
                text += f"\\nweight {node.weight}"
                write_line(f'\t\t"{node_id}" [label="{text}", style=dashed];')
            else:
                write_line(f'\t\t"{node_id}" [label="{text}"];')
        write_line("\t}")
    for node in tree:
        if node.parent is not None:
            write_line(f'\t"{node.parent}" -> "{node.id}";')
    write_line("}")
    return "\n".join(lines) + "\n"
