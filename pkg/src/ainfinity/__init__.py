"""Exact-arithmetic engine for A-infinity algebras with topological labels.

The package computes over the Novikov field with rational exponents and
coefficients, truncated at an energy cutoff.  It provides:

* ``novikov`` -- truncation-aware Novikov field arithmetic;
* ``labels`` -- label groups with energy/Maslov/boundary data and
  enumeration of energy-bounded classes;
* ``systems`` -- labeled multilinear operator systems, the diamond and
  brace calculus, and structure transport;
* ``axioms`` -- unitality / cyclic unitality / divisor-axiom checkers;
* ``group_series`` -- truncated series over the lattice group algebra,
  convergence margins, point evaluation, vanishing analysis;
* ``hpt`` -- contractions, decorated ribbon trees, minimal models;
* ``isotopy`` -- pseudo-isotopies, the operator integral, ud-homotopies,
  and inversion of invertible-linear-part morphisms;
* ``obstruction`` -- superpotentials, obstruction ideals, Maurer-Cartan
  point verification;
* ``transitions`` -- transitioning phases, wall-crossing and canceling
  identities;
* ``fukaya`` -- parallel translation, pushforward algebras, continuation
  marches;
* ``specfile``/``cli`` -- the text spec-file format and command dispatch.
"""

from .novikov import NovikovContext, NovikovElement
from .labels import LabelClass, LabelGroup
from .spaces import GradedSpace, Vec
from .systems import OperatorSystem, brace, diamond, ainfty_defect, hom_defect

__all__ = [
    "NovikovContext",
    "NovikovElement",
    "LabelClass",
    "LabelGroup",
    "GradedSpace",
    "Vec",
    "OperatorSystem",
    "brace",
    "diamond",
    "ainfty_defect",
    "hom_defect",
]
