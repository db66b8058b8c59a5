"""Exact computer algebra for a quantized U_q(sp6) symmetric-pair module category.

Subpackages are layered bottom-up:

    scalars    exact arithmetic over Q(i)(q), probe specialization
    rootsys    C3 root datum, pairings, normal order, weight bookkeeping
    uqneg      the negative nilpotent subalgebra modulo its defining ideal
    highest    truncated highest-weight modules, quotients, characters
    contraform contravariant (invariant) bilinear forms and norms
    tensorcat  the 6-dim fundamental module, tensor products, branching
    projector  extremal projectors and eigenvalue tables
    cli        command-line reports
"""

__version__ = "0.1.0"
