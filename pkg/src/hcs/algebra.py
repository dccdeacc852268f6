"""SO(3,2) generators as quadratic forms in four bosonic modes.

The Fock space holds modes (a1, a2, b1, b2) truncated at a total occupation
N. Ladder matrices are exact restrictions of the infinite ones, so any
identity involving k ladder steps holds on the states with total <= N - k;
checks are restricted to that "safe" subspace.
"""

import itertools
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import scipy.sparse as sparse

MODES = ("a1", "a2", "b1", "b2")

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
C_MATRIX = 1j * SIGMA[1]

# index labels in the order used by the metric eta = (+1, -1, -1, -1, +1)
INDICES = (0, 1, 2, 3, 5)
ETA = {0: 1.0, 1: -1.0, 2: -1.0, 3: -1.0, 5: 1.0}

GENERATOR_NAMES = ("L12", "L23", "L31", "L15", "L25", "L35", "L10", "L20", "L30", "L50")


class FockSpace:
    """Occupation basis of four modes with total quanta <= cutoff.

    States are enumerated by total quanta, then lexicographically in the
    occupations (n_a1, n_a2, n_b1, n_b2).
    """

    def __init__(self, cutoff):
        if cutoff < 1:
            raise ValueError("cutoff must be >= 1")
        self.cutoff = cutoff
        states = []
        for total in range(cutoff + 1):
            for occ in itertools.product(range(total + 1), repeat=4):
                if sum(occ) == total:
                    states.append(occ)
        self.states = states
        self.index = {occ: i for i, occ in enumerate(states)}
        self.totals = np.array([sum(s) for s in states])

    @property
    def dim(self):
        return len(self.states)

    def safe(self, depth):
        """Boolean mask of states with total quanta <= cutoff - depth."""
        return self.totals <= self.cutoff - depth

    def vacuum(self):
        v = np.zeros(self.dim, dtype=complex)
        v[0] = 1.0
        return v


def ladder(space, which, alpha, dagger=False):
    """Annihilation (or creation) operator for mode ``which``+``alpha``, e.g. ('a', 1).

    Matrix elements are sqrt(n) / sqrt(n+1); creation out of the truncated
    space is dropped.
    """
    mode = MODES.index(f"{which}{alpha}")
    rows, cols, vals = [], [], []
    for j, occ in enumerate(space.states):
        n = occ[mode]
        if n == 0:
            continue
        lowered = list(occ)
        lowered[mode] -= 1
        rows.append(space.index[tuple(lowered)])
        cols.append(j)
        vals.append(math.sqrt(n))
    op = sparse.csr_matrix((vals, (rows, cols)), shape=(space.dim, space.dim), dtype=complex)
    return op.conj().T.tocsr() if dagger else op


def _ladders(space):
    a = [ladder(space, "a", k) for k in (1, 2)]
    b = [ladder(space, "b", k) for k in (1, 2)]
    ad = [op.conj().T.tocsr() for op in a]
    bd = [op.conj().T.tocsr() for op in b]
    return a, b, ad, bd


def _bilinear(left, mat, right):
    # sum_{alpha beta} left[alpha] mat[alpha, beta] right[beta]
    out = None
    for i in range(2):
        for j in range(2):
            if mat[i, j] == 0:
                continue
            term = mat[i, j] * (left[i] @ right[j])
            out = term if out is None else out + term
    return out


def build_generators(space):
    """The ten generators L_AB as sparse matrices, keyed 'L12', ..., 'L50'.

    L_ij = (a+ s_k a + b+ s_k b)/2 with (i, j, k) cyclic,
    L_i5 = -(a+ s_i C b+ - a C s_i b)/2,
    L_i0 = (a+ s_i C b+ + a C s_i b)/(2i),
    L_50 = (a+ a + b+ b + 2)/2, with C = i s_2.
    """
    a, b, ad, bd = _ladders(space)
    ident = sparse.identity(space.dim, dtype=complex, format="csr")
    gens = {}
    for (i, j), k in zip(((1, 2), (2, 3), (3, 1)), (3, 1, 2)):
        s = SIGMA[k - 1]
        gens[f"L{i}{j}"] = 0.5 * (_bilinear(ad, s, a) + _bilinear(bd, s, b))
    for i in (1, 2, 3):
        up = _bilinear(ad, SIGMA[i - 1] @ C_MATRIX, bd)
        down = _bilinear(a, C_MATRIX @ SIGMA[i - 1], b)
        gens[f"L{i}5"] = -0.5 * (up - down)
        gens[f"L{i}0"] = (up + down) / 2j
    # a+a + b+b is the total number operator; built from the occupations
    # directly so the spectrum is exact (sqrt(n)^2 != n in floating point)
    number = sparse.diags(space.totals.astype(complex), format="csr")
    gens["L50"] = 0.5 * (number + 2 * ident)
    return {name: gens[name].tocsr() for name in GENERATOR_NAMES}


def generator(gens, A, B):
    """L_AB from the stored generators, using L_BA = -L_AB (e.g. L13 = -L31)."""
    if A == B:
        raise KeyError("L_AA vanishes identically")
    key = f"L{A}{B}"
    if key in gens:
        return gens[key]
    return -gens[f"L{B}{A}"]


def commutator_rhs(gens, A, B, C, D):
    """i (eta_AD L_BC + eta_BC L_AD - eta_AC L_BD - eta_BD L_AC)."""

    def eta(x, y):
        return ETA[x] if x == y else 0.0

    terms = (
        (eta(A, D), B, C),
        (eta(B, C), A, D),
        (-eta(A, C), B, D),
        (-eta(B, D), A, C),
    )
    out = sparse.csr_matrix(gens["L50"].shape, dtype=complex)
    for coef, x, y in terms:
        if coef != 0 and x != y:
            out = out + coef * generator(gens, x, y)
    return 1j * out


def pair_labels():
    """The 45 unordered pairs of distinct generators, as ((A, B), (C, D))."""
    labels = [tuple(map(int, name[1:])) for name in GENERATOR_NAMES]
    return list(itertools.combinations(labels, 2))


def commutator(x, y):
    return x @ y - y @ x


def _restrict(op, mask):
    idx = np.flatnonzero(mask)
    return op[idx][:, idx]


def check_commutators(space, tol=1e-10, workers=None):
    """Residual of every commutator relation on the safe subspace.

    Each generator moves total quanta by at most 2, so both sides are exact
    on states with total <= cutoff - 2.

    Returns
    -------
    list of dict
        one entry per pair with keys "pair", "residual", "pass".
    """
    if space.cutoff < 4:
        raise ValueError("commutator checks need cutoff >= 4")
    gens = build_generators(space)
    mask = space.safe(2)

    def one(pair):
        (A, B), (C, D) = pair
        diff = commutator(generator(gens, A, B), generator(gens, C, D)) - commutator_rhs(gens, A, B, C, D)
        sub = _restrict(diff, mask)
        residual = float(np.max(np.abs(sub.toarray()))) if sub.nnz else 0.0
        return {"pair": f"[L{A}{B},L{C}{D}]", "residual": residual, "pass": residual < tol}

    pairs = pair_labels()
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, pairs))
    return [one(pair) for pair in pairs]


def ab_transform(space):
    """Rotated modes A = (a + b)/sqrt2, B = (a - b)/sqrt2 and their quadratics.

    Returns
    -------
    dict with keys
        "A", "B": lists of the two annihilators;
        "X", "Xd", "Y": dicts keyed by (alpha, beta) for the A modes;
        "XB", "XBd", "YB": the same built from the B modes.
    """
    a, b, _, _ = _ladders(space)
    r2 = 1.0 / math.sqrt(2.0)
    big_a = [r2 * (a[k] + b[k]) for k in range(2)]
    big_b = [r2 * (a[k] - b[k]) for k in range(2)]
    out = {"A": big_a, "B": big_b}
    for tag, ops in (("", big_a), ("B", big_b)):
        dag = [op.conj().T.tocsr() for op in ops]
        x, xd, y = {}, {}, {}
        for al in range(2):
            for be in range(2):
                x[(al + 1, be + 1)] = (ops[al] @ ops[be]).tocsr()
                xd[(al + 1, be + 1)] = (dag[al] @ dag[be]).tocsr()
                y[(al + 1, be + 1)] = (0.5 * (ops[al] @ dag[be] + dag[be] @ ops[al])).tocsr()
        out["X" + tag] = x
        out["X" + tag + "d"] = xd
        out["Y" + tag] = y
    return out


def quadratic_family(space, transformed=None):
    """Names and matrices of the Sp(2,R) generators X, X+, Y for A and for B."""
    t = transformed or ab_transform(space)
    names, mats = [], []
    for tag in ("", "B"):
        for key, pairs in (("X", ((1, 1), (1, 2), (2, 2))), ("Xd", ((1, 1), (1, 2), (2, 2))),
                           ("Y", ((1, 1), (1, 2), (2, 1), (2, 2)))):
            family = t[key[0] + tag + key[1:]]
            for ab in pairs:
                names.append(f"{key[0]}{tag or 'A'}{key[1:]}{ab[0]}{ab[1]}")
                mats.append(family[ab])
    return names, mats


def reconstruct_generators(space, depth=2):
    """Least-squares expansion of each L_AB in the quadratic family.

    Returns
    -------
    dict
        name -> (coefficients, residual) with the residual measured as the
        max entry of L - sum c_k Q_k on the subspace total <= cutoff - depth.
    """
    gens = build_generators(space)
    names, mats = quadratic_family(space)
    mask = space.safe(depth)
    design = np.column_stack([_restrict(q, mask).toarray().ravel() for q in mats])
    out = {}
    for name, g in gens.items():
        target = _restrict(g, mask).toarray().ravel()
        coef, *_ = np.linalg.lstsq(design, target, rcond=None)
        residual = float(np.max(np.abs(design @ coef - target)))
        out[name] = (dict(zip(names, coef)), residual)
    return out
