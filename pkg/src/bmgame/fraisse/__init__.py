"""Classes of finite structures, their limits, and strategies for the game
whose moves are members of a class."""
from .classes import (
    BoundedDegree,
    Forests,
    Graphs,
    LinearOrders,
    PureSets,
    StructureClass,
    StructurePoset,
    get_class,
)
from .extension import (
    ExtensionCheck,
    ExtensionFailure,
    LimitCheck,
    MembershipCheck,
    extension_failures,
    extension_property_check,
)
from .limits import (
    DenseOrderLimit,
    LimitPresentation,
    PureSetLimit,
    RandomGraphLimit,
    ackermann,
    ackermann_code,
    bit_adjacent,
    dyadic,
    rado_witness,
    simplest_dyadic,
)
from .sparse import (
    BoundedDegreeOdd,
    Catalogue,
    ForestOdd,
    bounded_degree_odd_strategy,
    catalogue,
    complete_tree_graph,
    contains_complete_tree,
    forest_odd_strategy,
    is_regular,
    max_degree,
    n_complete_embed,
)
from .strategies import (
    LimitOddStrategy,
    RandomEve,
    ScriptedEve,
    TargetChain,
    UniversalityEve,
    apply_additions,
    eve_universality_strategy,
    odd_markov_strategy,
)


def amalgamate(cls: StructureClass, f, g):
    return cls.amalgamate(f, g)


def joint_embed(cls: StructureClass, X, Y):
    return cls.joint_embed(X, Y)
