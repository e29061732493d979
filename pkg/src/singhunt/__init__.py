"""singhunt: find and certify highly singular members of hypersurface families.

Modules
-------
fields    exact GF(p^k) arithmetic with a deterministic basis per (p, k)
poly      sparse multivariate polynomials and parametric families
exactla   exact dense linear algebra (RREF, kernels, determinants)
hunt      singular-member search and A_k classification
interp    vanishing systems through point sets, tangent-space filtering
lift      CRT + rational reconstruction, pair and tuple lifting
lattice   intersection lattices, radicals, divisibility-relation solving
cover     finite-abelian-cover building data and surface invariants
cli       the `singhunt` command-line pipeline
"""

__version__ = "0.1.0"
