"""Piece packing problems on square, triangular and segment grids."""
