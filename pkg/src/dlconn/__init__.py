"""dlconn

Twisted Weyl group combinatorics, the connectedness criterion for unions of
one-dimensional Deligne-Lusztig varieties, connected-component counts and a
brute-force flag-variety oracle over finite fields.

"""
from dlconn.__about__ import (__author__, __copyright__, __email__, __license__, __summary__, __title__,
                              __uri__, __version__)
