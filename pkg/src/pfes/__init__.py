"""Exact q-arithmetic, stringy E-functions of skew-form rank loci, the
identity suite verifying them, and a finite-field brute-force oracle."""

__version__ = "0.1.0"

from .qcore import (
    QPoly, QRational, QLaurent, PowerParam,
    NotDivisible, NotPolynomial, ZeroDenominator, LowerParamPole,
    poly_arith, poly_exact_div, rational_reduce,
    pochhammer, gauss_binomial, phi_eval, qpow, neg_qpow,
)
from .efun import (
    PfaffianParams, StratumContribution, RangeError,
    projective_E, grassmannian_E, nondeg_skew_E, rank_stratum_E,
    discrepancy, local_contribution,
    pf_stringy_closed, pf_stringy_recursive, pf_stringy_rodland,
)
from .identities import (
    CutParams, IdentityReport,
    isotropic_E, f_closed, f_circ,
    solve_newcor, verify_newrec, verify_hj, verify_AC_BD, verify_phi_reductions,
)
from .mirror import (
    MirrorCheckReport, StratumComparison,
    fiber_E_odd, even_fiber_E, grassmannian_frame_identity,
    main_coefficient_check, main_main_check, even_anomaly_check,
)
from .fq_oracle import (
    SkewFormFp, SubspaceFp, TooLarge,
    skew_rank, count_rank_stratum, count_isotropic, count_cut_stratum,
)
