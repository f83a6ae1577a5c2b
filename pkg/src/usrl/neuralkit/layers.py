"""Neural building blocks: affine, LSTM cell, bidirectional LSTM."""

import numpy as np

from . import autodiff as ad


class Affine:
    """y = x @ W + b for row vectors or (n, d) matrices."""

    def __init__(self, store, name, n_in, n_out):
        self.W = store.matrix(name + ".W", n_in, n_out)
        self.b = store.vector(name + ".b", n_out)

    def __call__(self, x):
        return x @ self.W + self.b


class LSTMCell:
    """Single LSTM step. Gate order along the packed weight axis: i, f, g, o
    (input gate, forget gate, cell candidate, output gate)."""

    def __init__(self, store, name, n_in, n_hidden):
        self.n_hidden = n_hidden
        self.Wx = store.matrix(name + ".Wx", n_in, 4 * n_hidden)
        self.Wh = store.matrix(name + ".Wh", n_hidden, 4 * n_hidden)
        self.b = store.vector(name + ".b", 4 * n_hidden)

    def initial_state(self):
        h = ad.tensor(np.zeros(self.n_hidden))
        c = ad.tensor(np.zeros(self.n_hidden))
        return h, c

    def __call__(self, x, state):
        h, c = state
        gates = x @ self.Wx + h @ self.Wh + self.b
        n = self.n_hidden
        i = ad.sigmoid(gates[0:n])
        f = ad.sigmoid(gates[n:2 * n])
        g = ad.tanh(gates[2 * n:3 * n])
        o = ad.sigmoid(gates[3 * n:4 * n])
        c_new = f * c + i * g
        h_new = o * ad.tanh(c_new)
        return h_new, c_new


class BiLSTM:
    """Runs a forward and a backward LSTM over a sequence of vectors and
    concatenates per-position hidden states (output dim = 2 * hidden)."""

    def __init__(self, store, name, n_in, n_hidden):
        self.fwd = LSTMCell(store, name + ".fwd", n_in, n_hidden)
        self.bwd = LSTMCell(store, name + ".bwd", n_in, n_hidden)

    def __call__(self, xs):
        if not xs:
            raise ValueError("BiLSTM requires a non-empty sequence")
        state = self.fwd.initial_state()
        fwd_states = []
        for x in xs:
            state = self.fwd(x, state)
            fwd_states.append(state[0])
        state = self.bwd.initial_state()
        bwd_states = [None] * len(xs)
        for t in range(len(xs) - 1, -1, -1):
            state = self.bwd(xs[t], state)
            bwd_states[t] = state[0]
        return [ad.concat([f, b]) for f, b in zip(fwd_states, bwd_states)]

    def final_state(self, xs):
        """Concat of the forward LSTM's last h and the backward LSTM's first-
        position h (its last step); used for character-level features."""
        outs = self(xs)
        n = self.fwd.n_hidden
        return ad.concat([outs[-1][0:n], outs[0][n:2 * n]])
