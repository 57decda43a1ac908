"""Exact computation in U^+_q, its q-shuffle image and its alternating central extension."""

__version__ = "0.1.0"


def clear_caches():
    """Drop every memo table (shuffle products, atom images, model products, series)."""
    from . import ace, atoms, damiani, genfun, shuffle
    genfun.clear_cache()
    ace.clear_models()
    atoms.clear_tables()
    damiani._e_elem.cache_clear()
    shuffle.star_words.cache_clear()
