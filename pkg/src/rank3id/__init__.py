"""Exact classification of non-identifiable rank-3 tensors over the rationals."""
from .classifier import (ClassificationReport, EigenSplit, Family, NoSplit, Reason, case_f_test,
                         classify, classify_multi, classify_three, eigen_split, hyperdeterminant,
                         rank_at_most_2, sigma3_minus_sigma2_2222)
from .generate import generate
from .pencil import (KroneckerInvariants, NormalForm, Pencil, elementary_divisors,
                     invariant_polynomials, kronecker_invariants, minimal_indices, normal_form,
                     pencil_of, pencil_rank, strictly_equivalent, tensor_rank_from_pencil)
from .tensor import (Tensor, apply_gl, concise, flatten, multilinear_rank, permute_factors,
                     rank1, reshape_pair)

__version__ = "0.1.0"
