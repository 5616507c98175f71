"""qinv3: quantum invariants of closed 3-manifolds at desk scale.

Pipelines:

* ``fpgroup``  -- words, finitely presented groups, mapping tori, H1;
* ``fingroup`` -- explicit finite groups (multiplication tables);
* ``homcount`` -- homomorphism counting, Dijkgraaf-Witten invariants,
  finite-quotient fingerprints;
* ``fusioncat`` -- spherical fusion category data (labels, 6j tensors);
* ``tri``      -- triangulations of closed 3-manifolds, Pachner moves;
* ``statesum`` -- Turaev-Viro state sums;
* ``sl2z``     -- SL(2,Z) arithmetic, torus-bundle TQFT traces,
  congruence-vs-integral conjugacy search;
* ``cli``      -- the ``qinv3`` command-line front end.
"""

__version__ = "0.1.0"
