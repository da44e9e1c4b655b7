"""Rank-two matrix perturbations, singular-value asymptotics and spectral
measure transforms: python bindings over the C++ core."""

try:
    from . import _ranktwo as _impl  # installed package layout
except ImportError:  # build tree: extension sits on PYTHONPATH directly
    import _ranktwo as _impl

NumericalError = _impl.NumericalError
cauchy_wigner = _impl.cauchy_wigner
density = _impl.density
eigenvalues = _impl.eigenvalues
interlacing = _impl.interlacing
meixner_classify = _impl.meixner_classify
meixner_density = _impl.meixner_density
meixner_u_map = _impl.meixner_u_map
perturbed_spectrum = _impl.perturbed_spectrum
perturbed_spectrum_general = _impl.perturbed_spectrum_general
poly_roots = _impl.poly_roots
singular_value_limits = _impl.singular_value_limits
smallest_sv = _impl.smallest_sv
u_transform_cauchy = _impl.u_transform_cauchy
verify_interlacing = _impl.verify_interlacing
w_transform_cauchy = _impl.w_transform_cauchy
weyl = _impl.weyl

__all__ = [
    "NumericalError",
    "cauchy_wigner",
    "density",
    "eigenvalues",
    "interlacing",
    "meixner_classify",
    "meixner_density",
    "meixner_u_map",
    "perturbed_spectrum",
    "perturbed_spectrum_general",
    "poly_roots",
    "singular_value_limits",
    "smallest_sv",
    "u_transform_cauchy",
    "verify_interlacing",
    "w_transform_cauchy",
    "weyl",
]
