# Well-founded trees package
from app.trees.wftree import (
    EMPTY_TREE,
    MapReport,
    Node,
    NodeRecord,
    WfTree,
    check_order_preserving,
    height,
    level,
    level_subtree,
    levels,
    node_rank,
    product_tree,
    subtree_at,
    tree_rank,
    validate_tree,
)
