"""Independent brute-force oracles built on sympy (test-only)."""
import sympy

z = sympy.Symbol("z")


def _generic(prefix, deg):
    cs = sympy.symbols(f"{prefix}0:{deg + 1}")
    return sum(c * z ** k for k, c in enumerate(cs)), list(cs)


def _dfrak(Da, Db, f, parity):
    sign = -1 if parity else 1
    return (Db * f - sign * f * Da).applyfunc(sympy.expand)


def _coeff_rows(mat, unknowns, top):
    """Linear map unknowns -> coefficients of z^0..z^top of every entry."""
    rows = []
    for e in mat:
        poly = sympy.Poly(e, z)
        for k in range(top + 1):
            c = poly.coeff_monomial(z ** k)
            rows.append([sympy.diff(c, u) for u in unknowns])
    return sympy.Matrix(rows) if rows else sympy.zeros(0, len(unknowns))


def _template(parity, deg, tag):
    p, cp = _generic(tag + "p", deg)
    q, cq = _generic(tag + "q", deg)
    if parity == 0:
        return sympy.Matrix([[p, 0], [0, q]]), cp + cq
    return sympy.Matrix([[0, p], [q, 0]]), cp + cq


def truncated_hom_dims(n, a, b, deg=6):
    """dim H^even, H^odd of Hom((z^a, z^(n+1-a)), (z^b, z^(n+1-b))) for W = z^(n+1).

    Closed morphisms with entries of degree <= deg, modulo the part of the
    image of the defect differential (from morphisms of degree <= deg) that
    stays in degree <= deg.
    """
    Da = sympy.Matrix([[0, z ** (n + 1 - a)], [z ** a, 0]])
    Db = sympy.Matrix([[0, z ** (n + 1 - b)], [z ** b, 0]])
    top = deg + n + 1
    dims = []
    for kappa in (0, 1):
        f, cf = _template(kappa, deg, "f")
        Z = _coeff_rows(_dfrak(Da, Db, f, kappa), cf, top).nullspace()
        m, cm = _template(1 - kappa, deg, "m")
        img = _dfrak(Da, Db, m, 1 - kappa)
        full = _coeff_rows(img, cm, top)
        # rows of degree > deg must vanish for the image to lie in the truncated space
        high = [r for r in range(full.rows) if r % (top + 1) > deg]
        low = [r for r in range(full.rows) if r % (top + 1) <= deg]
        keep = full.extract(high, list(range(full.cols))).nullspace() if high else [
            sympy.eye(full.cols).col(k) for k in range(full.cols)]
        B = [full.extract(low, list(range(full.cols))) * v for v in keep]
        rankB = sympy.Matrix.hstack(*B).rank() if B else 0
        dims.append(len(Z) - rankB)
    return tuple(dims)


def sympy_milnor_number(text, names):
    """Independent oracle: sympy Groebner basis + staircase count."""
    syms = sympy.symbols(names)
    W = sympy.sympify(text.replace("^", "**"), locals=dict(zip(names, syms)))
    G = sympy.groebner([sympy.diff(W, s) for s in syms], *syms, order="grevlex")
    lms = [sympy.Poly(g, *syms).monoms(order="grevlex")[0] for g in G.exprs]
    bound = 40
    count = 0

    def rec(prefix):
        nonlocal count
        if len(prefix) == len(syms):
            if not any(all(a >= b for a, b in zip(prefix, lm)) for lm in lms):
                count += 1
            return
        for e in range(bound):
            candidate = prefix + (e,) + (0,) * (len(syms) - len(prefix) - 1)
            if any(all(a >= b for a, b in zip(candidate, lm)) for lm in lms):
                break
            rec(prefix + (e,))

    rec(())
    return count


def macaulay_milnor_number(text, names, weights, bound):
    """Groebner-free oracle for weighted-homogeneous W.

    The Jacobian ideal is weighted-homogeneous, so its part of weighted
    degree <= bound is spanned by monomial multiples of the partials of that
    degree.  Count standard monomials as the corank of that Macaulay matrix.
    """
    import itertools

    syms = sympy.symbols(names)
    W = sympy.sympify(text.replace("^", "**"), locals=dict(zip(names, syms)))
    wdeg = lambda e: sum(w * k for w, k in zip(weights, e))
    monos = [e for e in itertools.product(range(bound + 1), repeat=len(syms)) if wdeg(e) <= bound]
    index = {e: k for k, e in enumerate(monos)}
    rows = []
    for s in syms:
        g = sympy.Poly(sympy.diff(W, s), *syms)
        gdeg = max(wdeg(e) for e in g.monoms())
        for m in monos:
            if wdeg(m) + gdeg > bound:
                continue
            row = [0] * len(monos)
            for e, c in zip(g.monoms(), g.coeffs()):
                row[index[tuple(a + b for a, b in zip(e, m))]] += c
            rows.append(row)
    rank = sympy.Matrix(rows).rank() if rows else 0
    return len(monos) - rank
