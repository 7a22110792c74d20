"""Counting the integers represented by a binary form.

The main entry points are :func:`predict` (the constant C_F = W_F A_F),
:func:`compute_aut`, :func:`a_f_quadrature`, :func:`count` and :func:`ladder`.
"""

__version__ = "0.1.0"

from .area import AreaEstimate, a_f_closed_binomial, a_f_closed_cubic, a_f_quadrature
from .asymptotics import LadderReport, Prediction, ladder, predict
from .autgroup import AutGroup, binomial_aut, compute_aut, subgroup_decomposition
from .counting import (BoxSpec, CountsReport, RepsIndex, count, counts, enumerate_naive,
                       enumerate_reps, exact_box, thue_audit)
from .errors import (BinformError, BudgetError, InternalCheckError, InvalidFormError,
                     PrecisionError, QuadratureError)
from .forms import (BinaryForm, RationalMatrix2, act, beta_exponent, discriminant, evaluate,
                    hessian, splitting_type)
from .lattices import Lattice2, fixed_lattice, hooley_m, lattice_of
from .weights import WeightInput, w_f
