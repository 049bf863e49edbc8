"""A structure that is SKT and balanced for different metrics, and Kahler
for none.

The algebra is the sum of the affine line's algebra, the Heisenberg
algebra and a line: [e1, e2] = e2, [e3, e4] = e5 on R^6, with the pairing
J e1 = e2, J e3 = e4, J e5 = e6.  The standard metric satisfies the
torsion condition, a tilted orthonormal frame gives a balanced metric,
and structural invariants rule out any Kahler metric: every two-step
solvable algebra with a closed fundamental form of this pure type is a
sum of affine blocks and an Abelian factor, which this algebra is not.
"""

from hermlie import (
    ComplexStructure,
    Metric,
    abelian,
    balanced_structural,
    classify_metric,
    direct_sum,
    fingerprint_distinguish,
    fundamental_form,
    hermitian_decomposition,
    parse_salamon,
    structure_invariants,
)
from hermlie.forms import ce_differential, j_pullback, wedge

L = parse_salamon("(0,21,0,0,43,0)")
J = ComplexStructure.standard(6)

print("fingerprint:", structure_invariants(L))

g_std = Metric.identity(6)
sigma = fundamental_form(L, g_std, J)
print("\nsigma =", sigma)
print("d sigma =", ce_differential(L, sigma))
print("d J* d sigma =", ce_differential(L, j_pullback(J.matrix, ce_differential(L, sigma))))
print("standard metric:", classify_metric(L, g_std, J))

dec = hermitian_decomposition(L, g_std, J)
print("decomposition: s, r, l =", (dec.s, dec.r, dec.ell), "pure type", dec.pure_type)

# a unitary frame: pairs (e1 - e6, e2 + e5), (e6, -e5), (e3, e4)
frame = [
    (1, 0, 0, 0, 0, -1),
    (0, 1, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 1),
    (0, 0, 0, 0, -1, 0),
    (0, 0, 1, 0, 0, 0),
    (0, 0, 0, 1, 0, 0),
]
g_tilt = Metric.from_orthonormal_frame(frame)
sigma_hat = fundamental_form(L, g_tilt, J)
print("\ntilted sigma =", sigma_hat)
print("d(sigma^2) =", ce_differential(L, wedge(sigma_hat, sigma_hat)))
print("tilted metric:", classify_metric(L, g_tilt, J))
print("structural balanced report:", balanced_structural(L, g_tilt, J).balanced)

print("\nseparating from sums of affine blocks:")
aff = parse_salamon("(0,21)")
for r in (1, 2, 3):
    blocks = [aff] * r + ([abelian(6 - 2 * r)] if r < 3 else [])
    print(f"  vs {r} affine block(s):", fingerprint_distinguish(L, direct_sum(*blocks)))
