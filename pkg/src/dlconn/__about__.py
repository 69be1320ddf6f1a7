__all__ = [
    "__title__", "__summary__", "__uri__", "__version__", "__author__",
    "__email__", "__license__", "__copyright__",
]

__title__ = "dlconn"
__summary__ = ("Twisted Weyl group combinatorics, connectedness of Deligne-Lusztig varieties "
               "and a finite flag-variety oracle.")
__uri__ = ""

__version__ = "1.0.0"

__author__ = "The dlconn developers"
__email__ = ""

__license__ = "GNU GPLv3"
__copyright__ = f"Copyright 2024-2026 {__author__}"
