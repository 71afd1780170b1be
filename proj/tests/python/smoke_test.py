"""Python smoke tests for the _core extension module."""

import math
import os
import sys

ext_dir = os.environ.get("QSGEOM_EXT_DIR")
if ext_dir:
    sys.path.insert(0, ext_dir)

import _core as qs  # noqa: E402


def approx(a, b, tol=1e-9):
    return abs(a - b) < tol


def main():
    # expressions
    v = qs.eval_expression("exp(i*pi)")
    assert approx(v.real, -1.0, 1e-15) and approx(v.imag, 0.0, 1e-15), v
    expr = qs.Expression.parse("a+b*c")
    assert expr.canonical() == "(a + (b * c))"
    assert expr.free_symbols() == {"a", "b", "c"}

    # families and the quantum geometric tensor
    bloch = qs.builtin_family("bloch_cp1")
    assert bloch.param_names == ["theta", "phi"]
    q = qs.qgt(bloch, [math.pi / 2, 0.7])
    assert approx(q[0][0].real, 0.25, 1e-6), q
    assert approx(q[1][1].real, 0.25, 1e-6), q
    assert approx(q[0][1].imag, 0.25, 1e-6), q

    hopf = qs.builtin_family("hopf_s3", {"r": 1.0})
    psi = hopf.evaluate([1.0, 2.0, 3.0])
    norm = qs.inner_product(psi, psi)
    assert approx(norm.real, 1.0, 1e-14), norm

    fam = qs.load_family(
        "family f\nparam a in [-10, 10]\nstate: [exp(i*a)]\n"
    )
    d = fam.differentiate([0.0], 0)
    assert approx(d[0].real, 0.0, 1e-10) and approx(d[0].imag, 1.0, 1e-10)

    # line elements and the twisted complex-pair identity
    d4 = [0.3, -0.2, 0.7, 0.4]
    lhs = qs.minkowski_line_element(d4, 1.0)
    z1, z2 = qs.complexify_pairs([d4[0], d4[1], d4[2], d4[3]])
    rhs = qs.wick_twisted_pair_line_element(z1, z2, 1.0, 1.0)
    assert approx(lhs, rhs, 1e-13)

    # metric assembly, eta equalities, signature
    g = qs.assemble_real_metric(1.0, 1.0, 1.0)
    assert qs.signature(g) == (3, 1, 0)
    eta = qs.eta_coefficients(g, 1.0)
    assert eta["pass"] and approx(eta["eta44"], 1.0, 1e-15)

    # chart pullbacks: flat target through the wick chart
    wick = qs.wick_chart(2.5)
    pulled = qs.pullback_metric([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
                                wick, [0.0, 0.0, 0.0, 0.0])
    assert approx(pulled[3][3], -6.25, 1e-12), pulled

    # curvature: constant fields are flat, the sphere is not
    flat = qs.flatness_scan(qs.constant_field(g), n_points=20, tol=1e-6, seed=3)
    assert flat["flat"], flat
    sphere = qs.builtin_metric_field("sphere2")
    rr = qs.riemann(sphere, [math.pi / 3, 1.0])
    assert approx(rr["scalar"], 2.0, 1e-3), rr

    s3 = qs.pullback_field([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
                           qs.hopf_chart(1.0))
    rr3 = qs.riemann(s3, [1.2, 2.0, 5.0])
    assert approx(rr3["scalar"], 6.0, 1e-2), rr3

    # error surfaces
    try:
        qs.builtin_family("plane_wave", {"k": 1.0})
        raise AssertionError("expected DomainError")
    except ValueError:
        pass

    print("python smoke tests passed")


if __name__ == "__main__":
    main()
