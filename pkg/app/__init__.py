# CLI rank laboratory
# Ordinal ranks of non-archimedean CLI Polish groups, computed on finite chain groups
