"""Finitely presented groups: words, coset enumeration, rewriting, abelianization."""

from .words import (
    Presentation,
    PresentationSyntaxError,
    Word,
    add_relators,
    parse_presentation,
    parse_word,
    parse_words,
)
from .cosets import CosetTable, Limits, Overflow, coset_index, todd_coxeter
from .snf import determinantal_divisors, smith_normal_form
from .rewriting import (
    AbelianInvariants,
    TableNotClosed,
    abelianization,
    reidemeister_schreier,
    subgroup_abelianization,
)
from .lowindex import infiniteness_certificate, low_index_subgroups


def certify_trivializing_slopes(pres, slopes, limits=None, strategy="hlt"):
    """True iff killing the slopes trivializes the group.

    Returns None when enumeration overflows: unknown, never a false positive.
    """
    try:
        table = todd_coxeter(add_relators(pres, slopes), [], limits, strategy)
    except Overflow:
        return None
    return table.index == 1
