import time
from fractions import Fraction as F
from wvgames.analysis import IntegerRepresentation, canonicalize
from wvgames.lp import fractional_minima
from wvgames.oracle import typed_minimum

ITEMS = [
    ((9, 62, 71), (46, 27, 8), 185, (F(115, 3), F(68, 3), F(20, 3)), F(463, 3)),
    ((19, 52, 65), (282, 155, 108), 5617, (F(200), F(110), F(383, 5)), F(19921, 5)),
    ((30, 93, 30), (24, 17, 10), 131, (F(67, 3), F(16), F(28, 3)), F(367, 3)),
    ((3, 71, 37), (127, 40, 19), 441, (F(100), F(63, 2), F(15)), F(695, 2)),
]

for sizes, hat, qhat, wbar, qbar in ITEMS:
    t0 = time.time()
    weights = tuple(w for w, c in zip(hat, sizes) for _ in range(c))
    g, _ = canonicalize(IntegerRepresentation(qhat, weights))
    build_t = time.time() - t0
    assert g.sizes.counts == sizes, g.sizes.counts
    t0 = time.time()
    minima = fractional_minima(g)
    frac = tuple(sol.objective_value for sol in minima[:4])
    lp_t = time.time() - t0
    t0 = time.time()
    ok, rep_min = typed_minimum(g)
    ip_t = time.time() - t0
    match_frac = frac == wbar + (qbar,)
    match_int = ok and rep_min.class_weights == hat and rep_min.quota == qhat
    print(f"{sizes}: rows={len(g.winners)} frac={match_frac} {frac} "
          f"int={match_int} {rep_min} "
          f"[build {build_t:.1f}s, lp {lp_t:.1f}s, ip {ip_t:.1f}s]")
