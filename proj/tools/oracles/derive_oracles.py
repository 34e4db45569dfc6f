"""Independent sympy derivations of the reference values frozen in
tests/data/oracles.json. Run from the repository root:

    python3 tools/oracles/derive_oracles.py > tests/data/oracles.json
"""
import itertools
import json
from fractions import Fraction

import sympy as sp

T, X = 0, 1
NAMES = "tx"


def jet(I):
    return sp.Symbol("u_" + "".join(NAMES[i] for i in sorted(I)) if I else "u")


def mom(I, i):
    return sp.Symbol("p_" + "".join(NAMES[k] for k in sorted(I)) + "." + NAMES[i])


def comma(sym, j):
    return sp.Symbol(sym.name + "," + NAMES[j])


def multis(order):
    return [tuple(c) for c in itertools.combinations_with_replacement(range(2), order)]


def D(f, i, top=6):
    out = 0
    for k in range(top):
        for I in multis(k):
            out += sp.diff(f, jet(I)) * jet(tuple(sorted(I + (i,))))
    return sp.expand(out)


def euler_lagrange(L, top=3):
    E = 0
    for k in range(top + 1):
        for I in multis(k):
            term = sp.diff(L, jet(I))
            for i in I:
                term = D(term, i)
            E += (-1) ** k * term
    return sp.expand(E)


def plain(e):
    # Plain strings are compared after parsing, so any valid spelling works.
    return str(sp.expand(e)).replace("**", "^")


def removals(I):
    seen = []
    for i in sorted(set(I)):
        J = list(I)
        J.remove(i)
        seen.append((tuple(J), i))
    return seen


def elh_rows(L, level):
    rows = []
    for k in range(level + 2):
        for I in multis(k):
            rhs = sp.diff(L, jet(I)) - sum(mom(J, i) for J, i in removals(I))
            div = sum(comma(mom(I, i), i) for i in range(2)) if k <= level else 0
            rows.append(sp.expand(div - rhs))
    for k in range(level + 1):
        for I in multis(k):
            for j in range(2):
                rows.append(comma(jet(I), j) - jet(tuple(sorted(I + (j,)))))
    return rows


def main():
    u_t, u_x, u_tt, u_xx = jet((T,)), jet((X,)), jet((T, T)), jet((X, X))
    kdv = u_x**3 - sp.Rational(1, 2) * u_x * u_t + sp.Rational(1, 2) * u_xx**2
    out = {}

    out["total_derivative"] = {
        "input": plain(3 * u_x**2 - sp.Rational(1, 2) * u_t),
        "direction": "t",
        "result": plain(D(3 * u_x**2 - sp.Rational(1, 2) * u_t, T)),
    }
    out["el_kdv"] = plain(euler_lagrange(kdv))
    out["el_xx_square"] = plain(euler_lagrange(sp.Rational(1, 2) * u_xx**2))

    # KdV + D_x(u^2): direct ELH rows of the modified Lagrangian.
    u = jet(())
    shifted = sp.expand(kdv + D(u**2, X))
    out["kdv_plus_divergence"] = {
        "lagrangian": plain(shifted),
        "elh_rows": [plain(r) for r in elh_rows(shifted, 1)],
    }

    # Wave Lagrangian: Legendre transform by solving p = dL/du_i.
    pt, px = mom((), T), mom((), X)
    wave = sp.Rational(1, 2) * (u_t**2 - u_x**2)
    sol = sp.solve([pt - sp.diff(wave, u_t), px - sp.diff(wave, u_x)], [u_t, u_x], dict=True)[0]
    H = sp.expand((pt * u_t + px * u_x - wave).subs(sol))
    out["wave"] = {
        "H": plain(H),
        "dH_dpt": plain(sp.diff(H, pt)),
        "dH_dpx": plain(sp.diff(H, px)),
        "u_t": plain(sol[u_t]),
        "u_x": plain(sol[u_x]),
    }

    # Energy density of KdV at a rational point where momenta take the
    # Legendre values ϑ^{.t} = -u_x/2, ϑ^{.x} = 3u_x^2 - u_t/2 - u_xxx,
    # ϑ^{x.x} = u_xx and the remaining level-one momenta vanish.
    point = {"u_t": Fraction(1, 3), "u_x": Fraction(-2, 5), "u_tt": Fraction(7, 4),
             "u_tx": Fraction(3, 2), "u_xx": Fraction(-5, 6), "u_xxx": Fraction(2, 7)}
    p = {
        "p_.t": -point["u_x"] / 2,
        "p_.x": 3 * point["u_x"] ** 2 - point["u_t"] / 2 - point["u_xxx"],
        "p_t.t": Fraction(0), "p_t.x": Fraction(0), "p_x.t": Fraction(0),
        "p_x.x": point["u_xx"],
    }
    E = (p["p_.t"] * point["u_t"] + p["p_.x"] * point["u_x"] + p["p_t.t"] * point["u_tt"]
         + (p["p_t.x"] + p["p_x.t"]) * point["u_tx"] + p["p_x.x"] * point["u_xx"]
         - point["u_x"] ** 3 + point["u_x"] * point["u_t"] / 2 - point["u_xx"] ** 2 / 2)
    out["energy_spot"] = {"point": {k: str(v) for k, v in point.items()},
                          "momenta": {k: str(v) for k, v in p.items()},
                          "value": str(E)}

    weights = {}
    for k in range(1, 5):
        r = (k + 1) // 2 + 1
        nodes = list(range(-r, r + 1))
        w = sp.finite_diff_weights(k, nodes, 0)[k][-1]
        weights[str(k)] = [str(sp.Rational(v)) for v in w]
    out["stencil_weights"] = weights

    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
