"""Smoke test for the compiled extension.

Build and install it first, for example:

    cd crates/py && maturin build --release -o dist && pip install dist/*.whl
"""

import math

import osplpp


def main():
    assert [osplpp.count_syt(n) for n in range(2, 7)] == [1, 2, 16, 768, 292864]

    nets = osplpp.sorting_networks(4)
    tabs = osplpp.staircase_tableaux(4)
    assert len(nets) == len(tabs) == 16
    images = {tuple(t.edelman_greene().swaps) for t in tabs}
    assert images == {tuple(s.swaps) for s in nets}

    s = osplpp.SortingNetwork([5, 1, 2, 4, 1, 3, 5, 4, 2, 1, 5, 3, 2, 4, 3])
    last, pi, _deg = s.params()
    assert last == [10, 13, 15, 14, 11] and pi == [1, 3, 5, 4, 2]
    t = s.to_tableau()
    assert t.edelman_greene() == s and t.params()[0] == last

    f, g = osplpp.identity_component(4, [1, 3, 2])
    assert f == g == "(x1 + 2*x2 + 5)/((x1+1)(x1+2)^2(x1+3)(x2+1)(x2+2)(x3+1))"
    assert osplpp.verify_identity(4)["verdict"] == "PASS"

    assert osplpp.rsk([[1, 2], [3, 4]]) == [[2, 3], [4, 8]]
    assert osplpp.burge([[1, 2], [3, 4]]) == [[1, 3], [4, 9]]
    assert osplpp.thm22([2, 2], bernoulli=True)["verdict"] == "EXPECTED-INEQUAL"

    u = [v[0] for v in osplpp.sample_vectors("osp", 2, 4000, seed=3)]
    assert abs(sum(u) / len(u) - 1.0) < 0.1
    pairs = osplpp.sample_vw(6, 2000, seed=4)
    d, p = osplpp.ks_test([max(v) for v, _ in pairs], [max(w) for _, w in pairs])
    assert p > 1e-3, (d, p)

    x = (0.3, 1.1, 0.7)
    assert math.isclose(osplpp.path_density(list(x), "osp"), osplpp.pu4(*x), rel_tol=1e-10)
    assert math.isclose(osplpp.hypoexp_cdf([1.0], 1.0), 1 - math.exp(-1), rel_tol=1e-12)
    assert osplpp.density_v([0.5, 0.8]) > 0

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
