"""Brute-force ground truth in a truncated two-mode Fock space.

Everything in this module is deliberately independent of the closed-form
solution: states are dense density matrices over the product basis
|n1, n2> with 0 <= n_j < nmax and flat index n1*nmax + n2, dynamics is the
exact rotating-frame generator

    H = (d - y)*n1_hat - (d + y)*n2_hat - (b1^dag b2^dag + b1 b2),
    d = (w1 - w2)/2,

exponentiated through a Hermitian eigendecomposition, and observables are
read off the density matrix directly. Lab-frame quadrature moments follow
from the local rotation a_j = exp(-i*theta) * b_j with theta = (w_bar + y)*tau
on both modes; photon numbers and entanglement quantities are invariant
under it.

Truncation is accounted for, never hidden: initial-state preparation records
the probability mass it cut, and every measurement reports the population of
the top Fock shell (tail mass). Comparisons against closed forms are only
meaningful when the tail mass is small; TAIL_GATE is the threshold used by
the acceptance checks.
"""

from __future__ import annotations

import math
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply

from .core import (
    Coherent,
    InitialState,
    ModelParams,
    Thermal,
    Vacuum,
)
from .gaussian import CovarianceMatrix4

__all__ = [
    "TAIL_GATE",
    "PREP_CUT_LIMIT",
    "TruncationError",
    "FockSpec",
    "DensityMatrix",
    "OracleMoments",
    "MixtureMoments",
    "build_hamiltonian",
    "initial_density",
    "initial_pure_state",
    "evolve",
    "evolved_density",
    "evolved_pure_state",
    "evolved_pure_state_sparse",
    "pure_moments",
    "measure",
    "direct_entropy",
    "direct_log_negativity",
    "pure_entropy",
    "pure_log_negativity",
    "thermal_mixture_cm",
    "thermal_log_negativity",
]

# Tail mass above this makes a truncated run untrustworthy for tight
# closed-form comparisons; oracle-check reports exit code 3 beyond it.
TAIL_GATE = 1e-8

# Initial-state preparation refuses to cut more probability mass than this.
PREP_CUT_LIMIT = 1e-6

_EIG_FLOOR = 1e-14


class TruncationError(RuntimeError):
    """Raised when a requested state does not fit the truncated basis."""


@dataclass(frozen=True)
class FockSpec:
    """Per-mode truncation choice. Basis states |n1, n2> with 0 <= n_j < nmax."""

    nmax: int
    dim_cap: int = 4096

    def __post_init__(self) -> None:
        if self.nmax < 2:
            raise ValueError(f"nmax must be at least 2; got {self.nmax}")
        if self.nmax * self.nmax > self.dim_cap:
            raise ValueError(
                f"nmax={self.nmax} gives dimension {self.nmax**2} "
                f"above the cap {self.dim_cap}"
            )

    @property
    def dim(self) -> int:
        return self.nmax * self.nmax


@dataclass(frozen=True)
class DensityMatrix:
    """Dense two-mode density matrix with its truncation bookkeeping.

    ``cut_mass`` is the probability mass removed (and renormalized away) when
    the state was prepared; it is zero for states that fit exactly.
    """

    rho: np.ndarray
    nmax: int
    cut_mass: float = 0.0

    def __post_init__(self) -> None:
        dim = self.nmax * self.nmax
        if self.rho.shape != (dim, dim):
            raise ValueError(
                f"density matrix shape {self.rho.shape} does not match nmax={self.nmax}"
            )

    def tail_mass(self) -> float:
        """Population of the top Fock shell (n1 = nmax-1 or n2 = nmax-1)."""
        pop = np.real(np.diagonal(self.rho)).reshape(self.nmax, self.nmax)
        return float(pop[-1, :].sum() + pop[:, -1].sum() - pop[-1, -1])

    def validate(self) -> None:
        """Check hermiticity (1e-10), unit trace (1e-8) and positivity (-1e-9)."""
        herm = float(np.max(np.abs(self.rho - self.rho.conj().T)))
        if herm > 1e-10:
            raise ValueError(f"density matrix not Hermitian: residual {herm}")
        tr = float(np.real(np.trace(self.rho)))
        if abs(tr - 1.0) > 1e-8:
            raise ValueError(f"density matrix trace {tr} differs from 1")
        lo = float(np.min(np.linalg.eigvalsh(self.rho)))
        if lo < -1e-9:
            raise ValueError(f"density matrix has negative eigenvalue {lo}")


@dataclass(frozen=True)
class OracleMoments:
    """First and second moments measured directly from a density matrix."""

    n1: float
    n2: float
    mean4: np.ndarray
    cm: CovarianceMatrix4
    tail_mass: float


@dataclass(frozen=True)
class MixtureMoments:
    """Moments and entropies of an evolved thermal state, sector-resolved."""

    n1: float
    n2: float
    cm: CovarianceMatrix4
    entropy1: float
    entropy2: float
    tail_mass: float
    neglected_weight: float


def _destroy(nmax: int) -> np.ndarray:
    a = np.zeros((nmax, nmax))
    n = np.arange(1, nmax)
    a[n - 1, n] = np.sqrt(n)
    return a


def _mode_operators(nmax: int) -> tuple[sp.csr_matrix, sp.csr_matrix]:
    """Sparse annihilation operators (a1, a2) on the product basis."""
    a = sp.csr_matrix(_destroy(nmax))
    eye = sp.identity(nmax, format="csr")
    a1 = sp.kron(a, eye, format="csr")
    a2 = sp.kron(eye, a, format="csr")
    return a1, a2


def build_hamiltonian(params: ModelParams, spec: FockSpec) -> np.ndarray:
    """Dense rotating-frame generator on the truncated basis.

    The matrix is real symmetric (hence Hermitian): the pair term
    b1^dag b2^dag + b1 b2 has real matrix elements and the rest is diagonal.
    Sign convention: evolution is U = exp(-i*H*tau), which reproduces the
    Heisenberg equation db1/dtau = -i*(d - y)*b1 + i*b2^dag.
    """
    nmax = spec.nmax
    d = params.half_detuning
    y = params.y
    num = np.arange(nmax)
    n1 = np.repeat(num, nmax).astype(float)
    n2 = np.tile(num, nmax).astype(float)
    h = np.diag((d - y) * n1 - (d + y) * n2)
    # Pair creation: |n1+1, n2+1> <- |n1, n2| with amplitude sqrt((n1+1)(n2+1)).
    k1 = np.repeat(num[:-1], nmax - 1)
    k2 = np.tile(num[:-1], nmax - 1)
    rows = (k1 + 1) * nmax + (k2 + 1)
    cols = k1 * nmax + k2
    amp = np.sqrt((k1 + 1.0) * (k2 + 1.0))
    h[rows, cols] -= amp
    h[cols, rows] -= amp
    return h


_EIGH_CACHE: "OrderedDict[tuple[int, float, float], tuple[np.ndarray, np.ndarray]]"
_EIGH_CACHE = OrderedDict()
_EIGH_CACHE_MAX = 4


def _evolution_basis(params: ModelParams, spec: FockSpec) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of the generator, cached on (nmax, y, d).

    tau enters only through the phases exp(-i*lambda*tau), so one
    decomposition serves every time point of a sweep.
    """
    key = (spec.nmax, params.y, params.half_detuning)
    hit = _EIGH_CACHE.get(key)
    if hit is not None:
        _EIGH_CACHE.move_to_end(key)
        return hit
    evals, evecs = np.linalg.eigh(build_hamiltonian(params, spec))
    _EIGH_CACHE[key] = (evals, evecs)
    while len(_EIGH_CACHE) > _EIGH_CACHE_MAX:
        _EIGH_CACHE.popitem(last=False)
    return evals, evecs


def _real_times_complex(real: np.ndarray, z: np.ndarray) -> np.ndarray:
    # Two real GEMMs instead of one complex GEMM with an upcast copy of `real`.
    return real @ z.real + 1j * (real @ z.imag)


def _propagator(evals: np.ndarray, evecs: np.ndarray, tau: float) -> np.ndarray:
    phases = np.exp(-1j * evals * tau)
    return _real_times_complex(evecs, phases[:, None] * evecs.T)


def _truncated_geometric(nbar: float, nmax: int) -> tuple[np.ndarray, float]:
    """Geometric weights p_n = nbar^n / (1+nbar)^(n+1), truncated; returns cut."""
    if nbar == 0.0:
        p = np.zeros(nmax)
        p[0] = 1.0
        return p, 0.0
    n = np.arange(nmax)
    ratio = nbar / (1.0 + nbar)
    p = np.exp(n * math.log(ratio) - math.log(1.0 + nbar))
    cut = ratio**nmax
    return p, float(cut)


def _coherent_vector(alpha: complex, nmax: int) -> tuple[np.ndarray, float]:
    c = np.zeros(nmax, dtype=complex)
    c[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(nmax - 1):
        c[n + 1] = c[n] * alpha / math.sqrt(n + 1)
    cut = 1.0 - float(np.sum(np.abs(c) ** 2))
    return c, max(cut, 0.0)


def initial_pure_state(init: InitialState, spec: FockSpec) -> tuple[np.ndarray, float]:
    """State vector and cut mass for a pure input (Vacuum or Coherent)."""
    nmax = spec.nmax
    if isinstance(init, Vacuum):
        psi = np.zeros(spec.dim, dtype=complex)
        psi[0] = 1.0
        return psi, 0.0
    if isinstance(init, Coherent):
        c, cut = _coherent_vector(init.alpha, nmax)
        if cut > PREP_CUT_LIMIT:
            raise TruncationError(
                f"coherent state alpha={init.alpha} loses mass {cut} at nmax={nmax}"
            )
        psi = np.zeros(spec.dim, dtype=complex)
        psi[::nmax] = c / math.sqrt(1.0 - cut)  # mode-2 slot fixed at |0>
        return psi, cut
    raise TypeError(f"{type(init).__name__} is not a pure input state")


def _thermal_weights(init: Thermal, spec: FockSpec) -> tuple[np.ndarray, float]:
    p1, p2, cut = _joint_geometric(init.n10, init.n20, spec.nmax)
    return np.kron(p1, p2), cut


def initial_density(init: InitialState, spec: FockSpec) -> DensityMatrix:
    """Truncated, renormalized input state as a density matrix.

    Raises TruncationError when more than PREP_CUT_LIMIT of the probability
    mass would be cut; otherwise the cut is recorded on the result.
    """
    if isinstance(init, Thermal):
        p, cut = _thermal_weights(init, spec)
        rho = np.diag(p.astype(complex))
        return DensityMatrix(rho, spec.nmax, cut)
    psi, cut = initial_pure_state(init, spec)
    return DensityMatrix(np.outer(psi, psi.conj()), spec.nmax, cut)


def evolve(rho0: DensityMatrix, h: np.ndarray, tau: float) -> DensityMatrix:
    """rho(tau) = U rho0 U^dag with U = exp(-i*h*tau) via eigendecomposition.

    Self-contained (decomposes ``h`` on every call); the parameter-keyed
    helpers below reuse a cached decomposition instead.
    """
    if h.shape != rho0.rho.shape:
        raise ValueError(f"generator shape {h.shape} does not match the state")
    herm = float(np.max(np.abs(h - h.conj().T)))
    if herm > 1e-12:
        raise ValueError(f"generator not Hermitian: residual {herm}")
    evals, evecs = np.linalg.eigh(np.real_if_close(h))
    if np.isrealobj(evecs):
        u = _propagator(evals, evecs, tau)
    else:
        u = evecs @ (np.exp(-1j * evals * tau)[:, None] * evecs.conj().T)
    if np.array_equal(rho0.rho, np.diag(np.diagonal(rho0.rho))):
        w = u * np.sqrt(np.real(np.diagonal(rho0.rho)).clip(min=0.0))[None, :]
        rho = w @ w.conj().T
    else:
        rho = u @ rho0.rho @ u.conj().T
    return DensityMatrix(rho, rho0.nmax, rho0.cut_mass)


def evolved_pure_state(
    params: ModelParams, init: InitialState, spec: FockSpec
) -> tuple[np.ndarray, float]:
    """Evolved state vector for a pure input, using the cached basis."""
    psi0, cut = initial_pure_state(init, spec)
    evals, evecs = _evolution_basis(params, spec)
    coeff = np.exp(-1j * evals * params.tau)[:, None] * (
        evecs.T @ psi0.reshape(-1, 1)
    )
    psi = _real_times_complex(evecs, coeff).ravel()
    return psi, cut


def _hamiltonian_sparse(params: ModelParams, spec: FockSpec) -> sp.csr_matrix:
    nmax = spec.nmax
    d = params.half_detuning
    y = params.y
    num = np.arange(nmax)
    n1 = np.repeat(num, nmax).astype(float)
    n2 = np.tile(num, nmax).astype(float)
    diag = sp.diags((d - y) * n1 - (d + y) * n2)
    a1, a2 = _ops(nmax)
    pair = (a1 @ a2).T
    return (diag - pair - pair.T).tocsr()


def evolved_pure_state_sparse(
    params: ModelParams, init: InitialState, spec: FockSpec
) -> tuple[np.ndarray, float]:
    """Pure-input evolution by a Krylov/Taylor product on the sparse generator.

    Same truncated dynamics as ``evolved_pure_state`` (agreement asserted in
    the tests) but without any dense eigendecomposition, so it stays cheap at
    truncations where forming the dense basis is uneconomical.
    """
    psi0, cut = initial_pure_state(init, spec)
    h = _hamiltonian_sparse(params, spec)
    psi = expm_multiply(-1j * params.tau * h, psi0)
    return psi, cut


def pure_moments(psi: np.ndarray, params: ModelParams, nmax: int) -> OracleMoments:
    """Moments of a pure state vector, without forming its density matrix.

    Value-identical to ``measure`` on the rank-1 density matrix (asserted in
    the tests).
    """
    a1, a2 = _ops(nmax)
    y1 = a1 @ psi
    y2 = a2 @ psi
    vecs = (y1, y2)
    g = np.empty((2, 2), dtype=complex)
    m = np.empty((2, 2), dtype=complex)
    mu = np.empty(2, dtype=complex)
    for j in range(2):
        mu[j] = np.vdot(psi, vecs[j])
        for k in range(2):
            g[j, k] = np.vdot(vecs[j], vecs[k])
            m[j, k] = np.vdot(psi, (a1 if j == 0 else a2) @ vecs[k])
    n1 = float(g[0, 0].real)
    n2 = float(g[1, 1].real)
    pop = (np.abs(psi) ** 2).reshape(nmax, nmax)
    tail = float(pop[-1, :].sum() + pop[:, -1].sum() - pop[-1, -1])
    gl, ml, mul = _rotate_to_lab(g, m, mu, params)
    mean4, cm = _cm_from_complex_moments(gl, ml, mul)
    return OracleMoments(n1, n2, mean4, cm, tail)


def evolved_density(
    params: ModelParams, init: InitialState, spec: FockSpec
) -> DensityMatrix:
    """Evolved density matrix via the cached eigendecomposition.

    Pure inputs evolve as vectors; thermal inputs use rho = W W^dag with
    W = U diag(sqrt(p)), so no intermediate product of three dense matrices
    is formed.
    """
    if isinstance(init, Thermal):
        p, cut = _thermal_weights(init, spec)
        evals, evecs = _evolution_basis(params, spec)
        u = _propagator(evals, evecs, params.tau)
        w = u * np.sqrt(p)[None, :]
        return DensityMatrix(w @ w.conj().T, spec.nmax, cut)
    psi, cut = evolved_pure_state(params, init, spec)
    return DensityMatrix(np.outer(psi, psi.conj()), spec.nmax, cut)


_OPS_CACHE: dict[int, tuple[sp.csr_matrix, sp.csr_matrix]] = {}


def _ops(nmax: int) -> tuple[sp.csr_matrix, sp.csr_matrix]:
    if nmax not in _OPS_CACHE:
        _OPS_CACHE[nmax] = _mode_operators(nmax)
        if len(_OPS_CACHE) > 16:
            _OPS_CACHE.pop(next(iter(_OPS_CACHE)))
    return _OPS_CACHE[nmax]


def _cm_from_complex_moments(
    g: np.ndarray, m: np.ndarray, mu: np.ndarray
) -> tuple[np.ndarray, CovarianceMatrix4]:
    """Quadrature mean vector and CM from <a_j^dag a_k>, <a_j a_k>, <a_j>.

    With central moments Mc[j,k] = <a_j a_k> - mu_j mu_k and the symmetrized
    normal part Ns[j,k] = <a_j^dag a_k> - conj(mu_j) mu_k + delta_jk/2:

        sigma(x_j, x_k) =  Re Mc + Re Ns      sigma(x_j, p_k) = Im Mc + Im Ns
        sigma(p_j, x_k) =  Im Mc - Im Ns      sigma(p_j, p_k) = -Re Mc + Re Ns
    """
    mc = m - np.outer(mu, mu)
    ns = g - np.outer(mu.conj(), mu) + 0.5 * np.eye(2)
    mc = (mc + mc.T) / 2.0
    ns = (ns + ns.conj().T) / 2.0
    cm = np.zeros((4, 4))
    for j in range(2):
        for k in range(2):
            cm[2 * j, 2 * k] = mc[j, k].real + ns[j, k].real
            cm[2 * j, 2 * k + 1] = mc[j, k].imag + ns[j, k].imag
            cm[2 * j + 1, 2 * k] = mc[j, k].imag - ns[j, k].imag
            cm[2 * j + 1, 2 * k + 1] = -mc[j, k].real + ns[j, k].real
    cm = (cm + cm.T) / 2.0
    mean4 = math.sqrt(2.0) * np.array(
        [mu[0].real, mu[0].imag, mu[1].real, mu[1].imag]
    )
    return mean4, CovarianceMatrix4(cm)


def _rotate_to_lab(
    g: np.ndarray, m: np.ndarray, mu: np.ndarray, params: ModelParams
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # a_j = exp(-i*theta) b_j on both modes; normal moments are invariant.
    phase = np.exp(-1j * (params.w_bar + params.y) * params.tau)
    return g, m * phase * phase, mu * phase


def measure(rho: DensityMatrix, params: ModelParams) -> OracleMoments:
    """Photon numbers, lab-frame quadrature means and CM, and tail mass."""
    a1, a2 = _ops(rho.nmax)
    ops = (a1, a2)
    rho_t = rho.rho.T

    def tr_sparse(x: sp.csr_matrix) -> complex:
        return complex(x.multiply(rho_t).sum())

    g = np.empty((2, 2), dtype=complex)
    m = np.empty((2, 2), dtype=complex)
    mu = np.empty(2, dtype=complex)
    for j in range(2):
        mu[j] = tr_sparse(ops[j])
        for k in range(2):
            g[j, k] = tr_sparse(ops[j].conj().T @ ops[k])
            m[j, k] = tr_sparse(ops[j] @ ops[k])
    n1 = float(g[0, 0].real)
    n2 = float(g[1, 1].real)
    gl, ml, mul = _rotate_to_lab(g, m, mu, params)
    mean4, cm = _cm_from_complex_moments(gl, ml, mul)
    return OracleMoments(n1, n2, mean4, cm, rho.tail_mass())


def _reduced(rho: DensityMatrix, mode: int) -> np.ndarray:
    nmax = rho.nmax
    r4 = rho.rho.reshape(nmax, nmax, nmax, nmax)
    if mode == 1:
        return np.einsum("akbk->ab", r4)
    if mode == 2:
        return np.einsum("kakb->ab", r4)
    raise ValueError(f"mode must be 1 or 2; got {mode}")


def direct_entropy(rho: DensityMatrix, mode: int) -> float:
    """Von Neumann entropy (nats) of one mode by explicit partial trace."""
    lam = np.linalg.eigvalsh(_reduced(rho, mode))
    lam = lam[lam > _EIG_FLOOR]
    return float(-np.sum(lam * np.log(lam)))


def direct_log_negativity(rho: DensityMatrix) -> float:
    """E_N = ln ||rho^T2||_1 via partial transposition of mode 2.

    The partial transpose swaps the two mode-2 indices; its trace norm is the
    sum of absolute eigenvalues (the matrix stays Hermitian).
    """
    nmax = rho.nmax
    pt = (
        rho.rho.reshape(nmax, nmax, nmax, nmax)
        .transpose(0, 3, 2, 1)
        .reshape(rho.rho.shape)
    )
    lam = np.linalg.eigvalsh(pt)
    return max(0.0, float(np.log(np.sum(np.abs(lam)))))


def pure_entropy(psi: np.ndarray, nmax: int) -> float:
    """Reduced entropy of a pure state from its Schmidt spectrum."""
    s = np.linalg.svd(psi.reshape(nmax, nmax), compute_uv=False)
    lam = s * s
    lam = lam[lam > _EIG_FLOOR]
    return float(-np.sum(lam * np.log(lam)))


def pure_log_negativity(psi: np.ndarray, nmax: int) -> float:
    """E_N of a pure state: ln ||rho^T2||_1 = 2 ln (sum of Schmidt coefficients).

    Exact identity; agreement with direct_log_negativity on the same state is
    asserted in the tests.
    """
    s = np.linalg.svd(psi.reshape(nmax, nmax), compute_uv=False)
    return max(0.0, 2.0 * float(np.log(np.sum(s))))


def _sector_structure(
    params: ModelParams, nmax: int, q: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Basis and tridiagonal generator of one photon-difference sector.

    The generator conserves q = n1 - n2 (pairs are created and destroyed
    together), so the full matrix block-diagonalizes into sectors spanned by
    |n + max(q,0), n + max(-q,0)> for n = 0 .. nmax-|q|-1, each tridiagonal.
    """
    s1, s2 = max(q, 0), max(-q, 0)
    n = np.arange(nmax - abs(q))
    n1 = n + s1
    n2 = n + s2
    d = params.half_detuning
    y = params.y
    diag = (d - y) * n1 - (d + y) * n2
    off = -np.sqrt((n1[:-1] + 1.0) * (n2[:-1] + 1.0))
    return n1, n2, diag.astype(float), off


def _sector_propagator(diag: np.ndarray, off: np.ndarray, tau: float) -> np.ndarray:
    if len(diag) == 1:
        return np.array([[np.exp(-1j * diag[0] * tau)]])
    evals, evecs = scipy.linalg.eigh_tridiagonal(diag, off)
    return evecs @ (np.exp(-1j * evals * tau)[:, None] * evecs.T)


def _joint_geometric(
    n10: float, n20: float, nmax: int
) -> tuple[np.ndarray, np.ndarray, float]:
    """Per-mode truncated geometric weights and the joint cut mass.

    The returned weights are scaled so their outer product sums to 1,
    matching the renormalization of ``initial_density``.
    """
    p1, cut1 = _truncated_geometric(n10, nmax)
    p2, cut2 = _truncated_geometric(n20, nmax)
    cut = 1.0 - (1.0 - cut1) * (1.0 - cut2)
    if cut > PREP_CUT_LIMIT:
        raise TruncationError(
            f"thermal occupations ({n10}, {n20}) lose mass {cut} at nmax={nmax}"
        )
    return p1 / p1.sum(), p2 / p2.sum(), float(cut)


def thermal_mixture_cm(
    params: ModelParams, n10: float, n20: float, spec: FockSpec
) -> MixtureMoments:
    """Moments of an evolved thermal state, one symmetry sector at a time.

    Identical in value to evolving the full truncated density matrix and
    calling ``measure`` (asserted in the tests), but exponentially cheaper:
    each photon-difference sector is an independent tridiagonal problem of
    size at most nmax, so truncations far beyond the dense-matrix cap are
    reachable when tight tail masses are required. Memory stays at
    O(nmax^2) regardless of nmax, so a caller raising ``dim_cap`` for this
    path keeps the cap's memory intent.

    For a Fock-diagonal input the evolved state has <a_j> = <a_j^2> =
    <a_1^dag a_2> = 0 exactly (sector orthogonality); the only nonzero
    correlator is <a_1 a_2>, accumulated here. Both reduced states stay
    diagonal in the number basis, so the marginal populations give the
    reduced Von Neumann entropies directly.
    """
    nmax = spec.nmax
    p1, p2, cut = _joint_geometric(n10, n20, nmax)
    n1_acc = 0.0
    n2_acc = 0.0
    tail = 0.0
    m12 = 0.0 + 0.0j
    pop1 = np.zeros(nmax)
    pop2 = np.zeros(nmax)
    for q in range(-(nmax - 1), nmax):
        n1v, n2v, diag, off = _sector_structure(params, nmax, q)
        w = p1[n1v] * p2[n2v]
        prop = _sector_propagator(diag, off, params.tau)
        pw = (np.abs(prop) ** 2) @ w
        n1_acc += float(n1v @ pw)
        n2_acc += float(n2v @ pw)
        pop1[n1v] += pw
        pop2[n2v] += pw
        tail += float(pw[-1])
        if len(n1v) > 1:
            amp = np.sqrt((n1v[1:] * n2v[1:]).astype(float))
            per_col = np.sum(prop[:-1, :].conj() * prop[1:, :] * amp[:, None], axis=0)
            m12 += complex(per_col @ w)
    g = np.array([[n1_acc, 0.0], [0.0, n2_acc]], dtype=complex)
    m = np.array([[0.0, m12], [m12, 0.0]], dtype=complex)
    mu = np.zeros(2, dtype=complex)
    gl, ml, mul = _rotate_to_lab(g, m, mu, params)
    _, cm = _cm_from_complex_moments(gl, ml, mul)

    def marginal_entropy(pop: np.ndarray) -> float:
        lam = pop[pop > _EIG_FLOOR]
        return float(-np.sum(lam * np.log(lam)))

    return MixtureMoments(
        n1=n1_acc,
        n2=n2_acc,
        cm=cm,
        entropy1=marginal_entropy(pop1),
        entropy2=marginal_entropy(pop2),
        tail_mass=tail,
        neglected_weight=cut,
    )


def thermal_log_negativity(
    params: ModelParams, n10: float, n20: float, spec: FockSpec
) -> tuple[float, float]:
    """E_N of an evolved thermal input via symmetry blocks; returns (E_N, tail).

    The evolved state is block-diagonal in q = n1 - n2, and its mode-2
    partial transpose is then block-diagonal in T = n1 + n2 with blocks of
    size at most nmax: the PT entry [(a, T-a), (b, T-b)] is the state's
    coherence [(a, T-b), (b, T-a)], which lives in sector q = a + b - T.
    Trace norm = sum of |eigenvalue| over all T blocks. Value-identical to
    ``direct_log_negativity`` on the same truncated state (asserted in the
    tests) at a fraction of the cost and memory.
    """
    nmax = spec.nmax
    p1, p2, _ = _joint_geometric(n10, n20, nmax)
    lengths = np.zeros(2 * nmax - 1, dtype=int)
    offsets = np.zeros(2 * nmax - 1, dtype=int)
    chunks = []
    pos = 0
    tail = 0.0
    for q in range(-(nmax - 1), nmax):
        n1v, n2v, diag, off = _sector_structure(params, nmax, q)
        w = p1[n1v] * p2[n2v]
        prop = _sector_propagator(diag, off, params.tau)
        scaled = prop * np.sqrt(w)[None, :]
        rho_q = scaled @ scaled.conj().T
        tail += float(rho_q[-1, -1].real)
        k = q + nmax - 1
        lengths[k] = len(n1v)
        offsets[k] = pos
        chunks.append(rho_q.ravel())
        pos += rho_q.size
    flat = np.concatenate(chunks)
    trace_norm = 0.0
    for total in range(2 * nmax - 1):
        lo = max(0, total - (nmax - 1))
        hi = min(total, nmax - 1)
        idx = np.arange(lo, hi + 1)
        a = idx[:, None]
        b = idx[None, :]
        q = a + b - total
        row = np.minimum(a, total - b)
        col = np.minimum(b, total - a)
        k = q + nmax - 1
        block = flat[offsets[k] + row * lengths[k] + col]
        lam = np.linalg.eigvalsh(block)
        trace_norm += float(np.sum(np.abs(lam)))
    return max(0.0, math.log(trace_norm)), tail
