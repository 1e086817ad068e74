"""Smoke test for the Python bindings.

    pip install --no-build-isolation -e crates/python
    python python/smoke_test.py
"""

import cmath
import math

import oscfractal_py as of


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} vs {b} (tol {tol})"


def main():
    f = of.Phase(1, [([2], 1.0), ([0], 1.0)])
    assert f.dim == 1 and str(f) == "x^2 + 1"
    close(f([0.5]), 1.25, 1e-15)
    assert of.Phase.from_json(f.to_json()).to_json() == f.to_json()

    g = of.Phase(2, [([2, 0], 1.0), ([0, 4], 1.0), ([0, 0], 1.0)])
    nd = of.newton(g)
    assert nd["beta"] == "-3/4" and nd["multiplicity"] == 0

    p = of.predict(f)
    assert p["curve_dim"] == "4/3" and p["osc_dim"] == "5/4"
    close(p["content"], 3 * 2 ** (2 / 3) * math.pi, 1e-9)

    close(of.gamma(0.5), math.sqrt(math.pi), 1e-12)
    close(of.beta(2.0, 3.0), 1 / 12, 1e-13)

    # stationary phase: I(τ) ≈ √π e^{iπ/4} e^{iτ} τ^{-1/2}
    tau = 800.0
    a = of.integral(f, tau) * cmath.exp(-1j * tau) * math.sqrt(tau)
    close(abs(a), math.sqrt(math.pi), 0.02 * math.sqrt(math.pi))

    taus, re, im = of.sample_curve(f, 20.0, 200.0)
    assert len(taus) == len(re) == len(im) > 100

    seg = [[0.0, 0.0], [1.0, 0.0]]
    close(of.sausage_area(seg, 0.01), 2 * 0.01 + math.pi * 1e-4, 1e-3 * 0.02)
    d = of.box_dimension(seg, eps_max=1e-2, eps_min=1e-4)
    close(d["d_hat"], 1.0, 0.02)

    chirp = of.gen_chirp(0.5, 1.0, t_min=1e-3)
    close(of.box_dimension(chirp, eps_max=1e-2, eps_min=1e-4)["d_hat"], 1.25, 0.03)
    astring = of.gen_astring(1.0)
    close(of.box_dimension(astring, connected=False, eps_max=1e-2, eps_min=1e-4)["d_hat"], 0.5, 0.03)
    spiral = of.gen_spiral(0.5)
    c = of.content(spiral, 4 / 3, model="tail-corrected", eps_max=1e-2, eps_min=1e-4)
    assert c["verdict"] == "nondegenerate"
    close(c["m_hat"], 6.9747, 0.7)

    amp = of.Amplitude(1, radius=1.0, phi0=1.0)
    close(amp([0.0]), 1.0, 1e-15)
    r = of.verify(of.Phase(1, [([1], 1.0), ([0], 2.0)]), amp, '{"tau_max": 500}')
    assert r["pass"], r["deltas"]

    try:
        of.Amplitude(1, profile="square")
    except ValueError:
        pass
    else:
        raise AssertionError("bad profile accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
