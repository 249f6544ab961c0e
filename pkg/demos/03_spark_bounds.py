"""
Spark: bounds and exact values
==============================

Compare the coherence, gamma/lambda and geometry bounds on a few matrices,
then check them against the exact spark and stopping distance of small
examples.
"""

from fgsense import analysis, geometry as geo, incidence
from fgsense.verify import K4_INCIDENCE, hamming_matrix

for kind, r, q, mu1, mu2, t in [("EG", 4, 2, 1, 3, 1), ("PG", 3, 4, 0, 1, 2), ("EG", 3, 7, 0, 1, 2)]:
    H = incidence.build_incidence(geo.make_geometry(kind, r, q), mu1, mu2, t)
    b = analysis.spark_lower_bounds(H)
    print(f"{kind}({r},{q}) type {t}: 1+1/mu {b.coherence_bound:.3f}, "
          f"1+gamma/lambda {b.gamma_lambda_bound}, geometry {b.typeI_bound or b.typeII_bound}, "
          f"unique below k = {b.guaranteed_sparsity + 1}")

# three nested geometry bounds; the first two coincide for adjacent flat dimensions,
# and also for type II over points of a Euclidean geometry
g = geo.make_geometry("EG", 4, 3)
for mu1, mu2, t in [(1, 2, 1), (1, 3, 1), (0, 2, 2), (1, 3, 2)]:
    c = analysis.bound_chain_check(g, mu1, mu2, t)
    print(f"type {t} mu1={mu1} mu2={mu2}: {[str(v) for v in c.values]} first two equal: {c.equal}")

# exact values on small matrices: the 4 x 6 incidence of K4 and the Hamming code
for name, A in [("K4", K4_INCIDENCE), ("Hamming(3)", hamming_matrix(3))]:
    sp = analysis.exact_spark(A, A.shape[1])
    st = analysis.stopping_distance(A, A.shape[1])
    print(f"{name}: spark {sp} via columns {sp.certificate}, stopping distance {st} via {st.certificate}")
