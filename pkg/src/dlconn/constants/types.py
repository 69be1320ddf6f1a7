from typing import Dict, NamedTuple, Tuple


########################
# Coxeter type catalog #
########################

# Letters accepted in "<Letter><rank>" group labels. Dihedral groups are
# written "I2(<m>)".
TYPE_LETTERS = ('A', 'B', 'C', 'D', 'E', 'F', 'G', 'H')

# Exceptional types exist only in these ranks.
EXCEPTIONAL_RANKS = {
    'E': (6, 7, 8),
    'F': (4,),
    'G': (2,),
    'H': (3, 4),
}

# Coxeter matrix entries that admit an integral Cartan matrix, mapped to the
# product a_ij * a_ji of the Cartan entries.
CRYSTALLOGRAPHIC_BONDS = {
    2: 0,
    3: 1,
    4: 2,
    6: 3,
}


##########
# Twists #
##########

IDENTITY_TWIST = '1'

# Shorthands "<order><Letter><rank>" for the standard diagram automorphisms.
TWIST_SHORTHAND_PATTERN = r'^(?P<order>[23])(?P<letter>[ADE])(?P<rank>\d+)$'
SUPPORTED_TWIST_SHORTHANDS = ('2A<n>', '2D<n>', '3D4', '2E6')


################
# Realizations #
################

class __RealizationKinds(NamedTuple):
    SPLIT: str = 'split'
    UNITARY: str = 'unitary'


REALIZATION_KINDS = __RealizationKinds()

REALIZATION_PREFIXES: Dict[str, str] = {
    'GL': REALIZATION_KINDS.SPLIT,
    'U': REALIZATION_KINDS.UNITARY,
}

REALIZATION_PATTERN = r'^(?P<prefix>GL|U)(?P<n>\d+)@q=(?P<q>\d+)$'

# Side of a descent.
SIDES: Tuple[str, str] = ('left', 'right')
