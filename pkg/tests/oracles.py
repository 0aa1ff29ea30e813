"""Independent reference computations used by the tests.

Each oracle takes a different route from the code it checks: direct
summation, enumeration, or an external library.
"""

import itertools
import math

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import shortest_path
from scipy.special import gammainc


def entropy_direct(p, k=None):
    k = k or len(p)
    return -sum(x * math.log(x, k) for x in p if x > 0)


def gjs_mutual_information(dists, weights):
    """GJS as mutual information between symbol and source sequence.

    Joint ``p(x_i, S_j) = w_j P_j(i)``, marginal ``P(x_i) = sum_j w_j P_j(i)``.
    """
    P = np.asarray(dists, float)
    w = np.asarray(weights, float)
    k = P.shape[1]
    marginal = w @ P
    total = 0.0
    for j in range(P.shape[0]):
        for i in range(k):
            joint = w[j] * P[j, i]
            if joint > 0:
                total += joint * math.log(joint / (w[j] * marginal[i]), k)
    return total


def pearson_chi2(dists, weights, N):
    """Pearson statistic of the k x m table ``N w_j P_j(i)`` against its independence fit."""
    P = np.asarray(dists, float)
    w = np.asarray(weights, float)
    marginal = w @ P
    expected = N * w[:, None] * marginal[None, :]
    observed = N * w[:, None] * P
    return float(((observed - expected) ** 2 / expected).sum())


def chi2_quantile_bisect(df, p):
    lo, hi = 0.0, 1.0
    while gammainc(df / 2, hi / 2) < p:
        hi *= 2
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if gammainc(df / 2, mid / 2) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def stationary_linear_solve(G):
    """Solve ``pi (G - I) = 0`` with ``sum(pi) = 1`` as a least-squares system."""
    k = G.shape[0]
    A = np.vstack([(G - np.eye(k)).T, np.ones(k)])
    b = np.zeros(k + 1)
    b[-1] = 1
    return np.linalg.lstsq(A, b, rcond=None)[0]


def lcs_bruteforce(a, b):
    """Longest subsequence of the shorter string that also occurs in the longer one."""
    a, b = (a, b) if len(a) <= len(b) else (b, a)
    common = subsequences(a) & subsequences(b)
    return max(len(s) for s in common)


def subsequences(s):
    out = set()
    for r in range(len(s) + 1):
        out.update(itertools.combinations(s, r))
    return out


class EditGraph:
    """All strings of length <= max_len over an alphabet, linked by single edits.

    Shortest path length in this graph is the Levenshtein distance, because
    an optimal edit script never has to pass through a longer string.
    """

    def __init__(self, symbols="abc", max_len=8):
        self.symbols = symbols
        self.nodes = [""]
        for n in range(1, max_len + 1):
            self.nodes.extend("".join(t) for t in itertools.product(symbols, repeat=n))
        self.index = {s: i for i, s in enumerate(self.nodes)}
        rows, cols = [], []
        for s, i in self.index.items():
            for nb in self._neighbours(s, max_len):
                rows.append(i)
                cols.append(self.index[nb])
        n = len(self.nodes)
        self.graph = sparse.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))

    def _neighbours(self, s, max_len):
        for i in range(len(s)):
            yield s[:i] + s[i + 1 :]
            for c in self.symbols:
                if c != s[i]:
                    yield s[:i] + c + s[i + 1 :]
        if len(s) < max_len:
            for i in range(len(s) + 1):
                for c in self.symbols:
                    yield s[:i] + c + s[i:]

    def distances_from(self, sources):
        idx = [self.index[s] for s in sources]
        return shortest_path(self.graph, method="D", unweighted=True, indices=idx)


def google_matrix_direct(seq, k, d):
    """Row-by-row construction: observed rows damped toward uniform, unseen rows uniform."""
    counts = np.zeros((k, k))
    for a, b in zip(seq, seq[1:]):
        counts[a, b] += 1
    G = np.empty((k, k))
    for i in range(k):
        total = counts[i].sum()
        G[i] = d * counts[i] / total + (1 - d) / k if total else 1.0 / k
    return G
