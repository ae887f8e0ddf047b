"""Exception hierarchy.

Every error raised by the library derives from :class:`MultinormError` so
callers (in particular the scenario runner) can tell engine failures apart
from genuine bugs.
"""

from __future__ import annotations


class MultinormError(Exception):
    """Base class for all library errors."""


# group construction
class NonBijective(MultinormError):
    """A supplied permutation repeats or omits a point."""


class OrderBound(MultinormError):
    """Group closure exceeded the configured order bound."""


class BadIndex(MultinormError):
    """An element index is outside the group."""


class ParentMismatch(MultinormError):
    """Two subgroups do not share the same parent group."""


class NotNormal(MultinormError):
    """A quotient was requested by a non-normal subgroup."""


# lattices
class GroupMismatch(MultinormError):
    """Lattices over different groups cannot be combined."""


class NotSaturated(MultinormError):
    """A sublattice whose quotient would have torsion."""


class NotEquivariant(MultinormError):
    """A matrix does not commute with the group action."""


class NotInjective(MultinormError):
    """A morphism required to be injective has a kernel."""


class NotNested(MultinormError):
    """Subgroups required to be nested are not."""


class DescentFailure(MultinormError):
    """A map failed to descend to a quotient lattice (internal check)."""


# cohomology
class BudgetExceeded(MultinormError):
    """A cochain space is larger than the configured budget."""


class UnsupportedDegree(MultinormError):
    """Cohomology degree outside the supported range 0..3."""


class NotFixedModule(MultinormError):
    """The supplied module is not the fixed sublattice it claims to be."""


class InternalError(MultinormError):
    """Impossible state: signals a bug in the exact linear algebra."""


# scenario semantics
class BadPartition(MultinormError):
    """An index partition is not a bipartition of the field list."""


class NotGaloisF(MultinormError):
    """The intersection field is not Galois over the base."""


class BadOverride(MultinormError):
    """An override subgroup is not contained in its field subgroup."""


class NotD4Shape(MultinormError):
    """A group expected to be dihedral of order 8 is not."""


class TheoremViolation(MultinormError):
    """Hypotheses hold but the asserted conclusion fails (bug gate)."""


# arithmetic
class NotOddPrime(MultinormError):
    """Legendre symbol modulus must be an odd prime."""


class NotQuarticDomain(MultinormError):
    """Quartic residue symbol preconditions fail."""


class EvenInput(MultinormError):
    """The dyadic 8th-power criterion needs an odd unit."""


# scenarios / CLI
class ParseError(MultinormError):
    """A scenario file or option is malformed (CLI exit code 2)."""


class AssertionFailure(MultinormError):
    """An embedded scenario assertion failed (CLI exit code 1)."""
