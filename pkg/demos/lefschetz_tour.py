"""
Lefschetz decomposition of exterior forms
=========================================

Split a random form into primitive pieces, then check the sign of
gamma ^ gamma for primitive (1,1)-forms in dimension four.
"""

from dhtoric import omega, primitive_decomposition
from dhtoric import sl2forms as sl

alpha = sl.random_form(3, 3, seed=5)
d = primitive_decomposition(alpha)
for r, beta in d.components.items():
    print(f"L^{r}:", beta)
print("round trip:", d.reconstruct() == alpha)

print("dim P^k for n = 3:", [sl.primitive_dimension(3, k) for k in range(4)])

gamma = sl.random_primitive_11(seed=1)
print("gamma =", gamma)
print("gamma^2 =", gamma.wedge(gamma).top_coefficient(), " omega^2 =", omega(2).power(2).top_coefficient())
print("Weil identity holds:", sl.weil_verify(gamma))
