"""Brute-force numerical constructions used to cross-check the analytic paths.

Nothing here reuses the closed-form eigenvalues, mixing angles, jump
coefficients or rate bookkeeping: the dressed Hamiltonian is built from Pauli
matrices in the product basis and diagonalised numerically, and the population
generator is read off a full Lindblad dissipator.
"""

from __future__ import annotations

import numpy as np

from defect_diode.spectrum import DressedSpectrum

SX = np.array([[0.0, 1.0], [1.0, 0.0]])
SZ = np.array([[1.0, 0.0], [0.0, -1.0]])  # |e> = (1, 0)
I2 = np.eye(2)

# product basis order: |ee>, |eg>, |ge>, |gg>
_EVEN = [3, 0]  # |gg>, |ee>
_ODD = [1, 2]   # |eg>, |ge>


def dressed_hamiltonian(spec: DressedSpectrum) -> np.ndarray:
    """Rotated two-defect Hamiltonian in the product basis."""
    wl, wr = spec.omega
    return (0.5 * wl * np.kron(SZ, I2) + 0.5 * wr * np.kron(I2, SZ)
            + 0.5 * spec.g_par * np.kron(SZ, SZ) + 0.5 * spec.g_perp * np.kron(SX, SX))


def coupling_operators(spec: DressedSpectrum) -> tuple[np.ndarray, np.ndarray]:
    """cos(theta) sz + sin(theta) sx on each defect, in the product basis."""
    ops = []
    for k in (0, 1):
        single = np.cos(spec.theta[k]) * SZ + np.sin(spec.theta[k]) * SX
        ops.append(np.kron(single, I2) if k == 0 else np.kron(I2, single))
    return ops[0], ops[1]


def eigensystem(spec: DressedSpectrum) -> tuple[np.ndarray, np.ndarray]:
    """Numerical eigenpairs labelled like eps_1..eps_4.

    The Hamiltonian conserves sz_L sz_R parity. Each parity block is
    diagonalised on its own; eps_1/eps_2 are the lower/upper even states and
    eps_4/eps_3 the lower/upper odd states. Returns (energies, vectors) with
    vectors as columns.
    """
    h = dressed_hamiltonian(spec)
    energies = np.empty(4)
    vecs = np.zeros((4, 4))
    for block, labels in ((_EVEN, (0, 1)), (_ODD, (3, 2))):
        w, v = np.linalg.eigh(h[np.ix_(block, block)])
        for col, label in enumerate(labels):
            energies[label] = w[col]
            vecs[block, label] = v[:, col]
    return energies, vecs


def numerical_matrix_elements(spec: DressedSpectrum) -> np.ndarray:
    """<eps_j| S_mu |eps_m> for every level pair, shape (2, 4, 4)."""
    _, vecs = eigensystem(spec)
    return np.stack([vecs.T @ s @ vecs for s in coupling_operators(spec)])


def _bose(w, t):
    return 0.0 if t == 0 else 1.0 / np.expm1(w / t)


def dissipator_generators(spec: DressedSpectrum, gammas, temperatures_ghz) -> np.ndarray:
    """Population blocks of the secular Lindblad dissipators, shape (2, 4, 4).

    For every level pair with E_m > E_j the eigenoperator S = s_jm |j><m| enters
    with weights gamma (n + 1) for emission and gamma n for absorption, and
    L[rho] = sum J(-w) (2 S rho S^+ - {S^+ S, rho}) + J(w) (2 S^+ rho S - {S S^+, rho}).
    Column i of the result holds diag(L[|i><i|]).
    """
    energies, _ = eigensystem(spec)
    elements = numerical_matrix_elements(spec)
    out = np.zeros((2, 4, 4))
    for mu in (0, 1):
        ops = []
        for j in range(4):
            for m in range(4):
                w = energies[m] - energies[j]
                if w <= 0:
                    continue
                s = np.zeros((4, 4))
                s[j, m] = elements[mu, j, m]
                n = _bose(w, temperatures_ghz[mu])
                ops.append((gammas[mu] * (n + 1.0), s))
                ops.append((gammas[mu] * n, s.T))
        for i in range(4):
            rho = np.zeros((4, 4))
            rho[i, i] = 1.0
            d = np.zeros((4, 4))
            for weight, s in ops:
                sd = s.conj().T
                d += weight * (2 * s @ rho @ sd - sd @ s @ rho - rho @ sd @ s)
            out[mu, :, i] = np.diag(d)
    return out
