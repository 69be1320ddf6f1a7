"""Names and statements of every verification check.

Each group carries the short ``NAME`` used on the command line and in the
report stream, and the ``STATEMENT`` embedded in every report it produces.

"""
from typing import NamedTuple


########################
# Combinatorial checks #
########################

class __Steinberg(NamedTuple):
    NAME: str = 'steinberg'
    STATEMENT: str = ('W^sigma with the generators w_0^s (longest element of the parabolic generated by the '
                      'sigma-orbit of s) is a Coxeter system, and its Bruhat order is the restriction of the '
                      'Bruhat order of W.')


STEINBERG = __Steinberg()


class __DescentChain(NamedTuple):
    NAME: str = 'descent'
    STATEMENT: str = ('If I lies in no proper sigma-stable subset of S and v in W^sigma is not the identity, '
                      'some s in I satisfies vs < v; iterating v -> v w_0^s reaches the identity.')


DESCENT_CHAIN = __DescentChain()


#################
# Oracle checks #
#################

class __TheoremConnectivity(NamedTuple):
    NAME: str = 'theorem'
    STATEMENT: str = ('The union of X(id) and X(s), s in I, has connected closure if and only if I is not '
                      'contained in any proper sigma-stable subset of S.')


THEOREM_CONNECTIVITY = __TheoremConnectivity()


class __LemmaCellEmptiness(NamedTuple):
    NAME: str = 'lemma'
    STATEMENT: str = 'X(s) meets the Schubert cell C_v only if v is in W^sigma and vs < v.'


LEMMA_CELL_EMPTINESS = __LemmaCellEmptiness()


class __ComponentFibers(NamedTuple):
    NAME: str = 'fibers'
    STATEMENT: str = ('The projection G/B -> G/P^w maps X(w) onto the rational points of G_0/P^w_0 with the '
                      'connected components as fibers, so X(w) has N(W)/N(W^w) connected components.')


COMPONENT_FIBERS = __ComponentFibers()


class __ClosureRationalCounts(NamedTuple):
    NAME: str = 'closure'
    STATEMENT: str = ('Every connected component of X(w) has N(W^w) rational points of G/B in its closure; in '
                      'particular every component closure contains a rational point.')


CLOSURE_RATIONAL_COUNTS = __ClosureRationalCounts()


class __X1Closure(NamedTuple):
    NAME: str = 'x1'
    STATEMENT: str = ('The component X_1 of X(s) whose closure contains C_id meets the rational points exactly '
                      'in C_id together with C_{w_0^s}(F_q).')


X1_CLOSURE = __X1Closure()


class __ComponentBridge(NamedTuple):
    NAME: str = 'bridge'
    STATEMENT: str = ('For v in W^sigma with vs < v one has v w_0^s < v, and every x in C_v(F_q) lies in a '
                      'component closure of X(s) containing a rational point of C_{v w_0^s}.')


COMPONENT_BRIDGE = __ComponentBridge()


class __RationalCount(NamedTuple):
    NAME: str = 'rational_count'
    STATEMENT: str = 'N(W) is the number of rational points of G/B.'


RATIONAL_COUNT = __RationalCount()


class __CellSizes(NamedTuple):
    NAME: str = 'cell_sizes'
    STATEMENT: str = ('C_v has rational points if and only if v is fixed by sigma, and then C_v(F_q) has '
                      'q^l(v) points.')


CELL_SIZES = __CellSizes()


ORACLE_CHECKS = [
    RATIONAL_COUNT,
    CELL_SIZES,
    THEOREM_CONNECTIVITY,
    LEMMA_CELL_EMPTINESS,
    COMPONENT_FIBERS,
    CLOSURE_RATIONAL_COUNTS,
    X1_CLOSURE,
    COMPONENT_BRIDGE,
]

ORACLE_CHECK_NAMES = [check.NAME for check in ORACLE_CHECKS]
