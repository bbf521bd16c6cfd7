"""Type-A quiver loci, their Zelevinsky embedding into partial flag varieties,
and brute-force checks over small finite fields."""

__version__ = "0.1.0"
