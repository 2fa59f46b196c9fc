# Subtree index over syntactically annotated trees
__version__ = "0.1.0"
