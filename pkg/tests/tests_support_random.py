"""Shared randomized-instance builders for the property and acceptance
suites."""

from recolle.complexes import CornerMat, ProjComplex, expand_mults, proj_stalk
from recolle.modules import proj_sum, quotient_module, submodule_span


def random_complex_for(a, rng, max_len=3, max_mult=2):
    """Random bounded minimal complex (radical entries, d^2 = 0) built by
    rejection sampling; falls back to a stalk when rejection fails."""
    rad = set(a.radical_idx)
    r = a.num_vertices
    for _ in range(60):
        length = rng.randint(1, max_len)
        comps = {}
        for d in range(length):
            m = [rng.randint(0, max_mult) for _ in range(r)]
            if any(m):
                comps[d] = m
        if not comps:
            continue
        diffs = {}
        for d in sorted(comps):
            if d + 1 not in comps:
                continue
            rows = expand_mults(a, comps[d + 1])
            cols = expand_mults(a, comps[d])
            cm = CornerMat(a, rows, cols)
            for t, w in enumerate(rows):
                for s, v in enumerate(cols):
                    for i in a.corner_indices(w, v):
                        if i in rad and rng.random() < 0.5:
                            cm.entries[t][s][i] = a.field.one
            diffs[d] = cm
        x = ProjComplex(a, comps, diffs)
        try:
            x.verify_d_squared()
        except Exception:
            continue
        if not x.is_zero():
            return x
    return proj_stalk(a, 0)


def random_module_for(a, rng, max_mult=1):
    """Random quotient of a projective sum by a random radical submodule."""
    from recolle.modules import radical_span

    mults = [rng.randint(0, max_mult) for _ in range(a.num_vertices)]
    if not any(mults):
        mults[rng.randrange(a.num_vertices)] = 1
    p = proj_sum(a, mults)
    rad = radical_span(p)
    cols = [rad.column(j) for j in range(rad.ncols) if rng.random() < 0.4]
    if not cols:
        return p
    span = submodule_span(p, cols)
    if span.ncols == p.dim:
        return p
    quot, _ = quotient_module(p, span)
    return quot
