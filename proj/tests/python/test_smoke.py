"""Python smoke tests for the ranktwo bindings (plain asserts, no pytest)."""

import math

import ranktwo as rt


def close(a, b, tol=1e-9):
    return abs(a - b) < tol


def test_eigenvalues():
    ev = sorted(x.real for x in rt.eigenvalues([[1.0, 0.0], [0.0, 2.0]]))
    assert close(ev[0], 1.0) and close(ev[1], 2.0)


def test_perturbed_spectrum_worked_example():
    a = [[1.0, 0, 0, 0], [0, 2.0, 0, 0], [0, 0, 3.0, 0], [0, 0, 0, 4.0]]
    u = [0.5, 0.5, 0.5, 0.5]
    ev = sorted(z.real for z in rt.perturbed_spectrum(a, u, 1.1, 1.2))
    expect = [-3.25, 1.38, 2.50, 3.61]
    assert all(abs(x - y) < 0.01 for x, y in zip(ev, expect)), ev
    applies, x0 = rt.interlacing(a, u, 1.1, 1.2)
    assert applies and abs(x0 + 3.37) < 0.01
    assert rt.verify_interlacing([1, 2, 3, 4], ev)


def test_poly_roots():
    roots = sorted(z.real for z in rt.poly_roots([2.0, -3.0, 1.0]))
    assert close(roots[0], 1.0, 1e-8) and close(roots[1], 2.0, 1e-8)


def test_weyl_resolvent():
    # A = 0 so Q_u(z) = 1/z for unit u.
    v = rt.weyl([[0.0, 0.0], [0.0, 0.0]], [1.0, 0.0], [1.0, 0.0], 2.0 + 1.0j)
    assert close(v, 1.0 / (2.0 + 1.0j))


def test_wigner_density():
    grid = [-1.0, 0.0, 1.0]
    dens, natoms = rt.density("wigner", "none", 0.0, 0.0, grid)
    for x, d in zip(grid, dens):
        assert abs(d - math.sqrt(4 - x * x) / (2 * math.pi)) < 1e-5, (x, d)
    assert natoms == 0


def test_transform_consistency():
    z = 0.7 + 1.3j
    gw = rt.cauchy_wigner(z)
    gu = rt.u_transform_cauchy(0.5, 0.5, z)
    assert close(1.0 / gu, 0.5 / gw + 0.5 * z, 1e-12)
    gwt = rt.w_transform_cauchy(0.5, 0.5, z)
    num = 1.0 + 0.5 * (z * z * gw - z)
    den = (1.0 + 0.5 * z) * gw - 0.5
    assert close(1.0 / gwt, 0.5 + num / den, 1e-12)


def test_meixner():
    count, locs = rt.meixner_classify(1.0, 0.0, 1.0, 1.0)
    assert count == 1 and close(locs[0], 2.0)
    is_delta, g, a, b, c = rt.meixner_u_map(1.0, 0.0, 1.0, 1.0, 0.25, 0.25)
    assert not is_delta and close(c, 0.5625)


def test_smallest_sv():
    vanishes, limit = rt.smallest_sv(
        [[1.0, 0.0], [0.0, 1.0]], [1.0, 0.0], [0.0, 1.0]
    )
    assert vanishes and close(limit, 1.0)


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok: {t.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    main()
