"""Named parameter store with initialization, gradients, and checkpoints."""

import struct

import numpy as np

from .autodiff import Tensor

MAGIC = b"NKCP"
VERSION = 1


class CheckpointError(ValueError):
    """Raised on malformed or incompatible checkpoint files."""


class ParameterStore:
    """Named float64 parameters plus Adagrad accumulators and an RNG.

    Initialization scheme: Glorot uniform for weight matrices, zeros for
    biases, N(0, 0.1) for embedding tables.
    """

    def __init__(self, seed=0):
        self.seed = int(seed)
        self.rng = np.random.default_rng(self.seed)
        self.params = {}
        self.adagrad_acc = {}

    def _register(self, name, data):
        if name in self.params:
            raise ValueError("duplicate parameter name: %s" % name)
        t = Tensor(data, requires_grad=True)
        self.params[name] = t
        return t

    def matrix(self, name, n_in, n_out):
        bound = np.sqrt(6.0 / (n_in + n_out))
        return self._register(name, self.rng.uniform(-bound, bound, (n_in, n_out)))

    def vector(self, name, n):
        return self._register(name, np.zeros(n))

    def embedding(self, name, vocab_size, dim):
        return self._register(name, self.rng.normal(0.0, 0.1, (vocab_size, dim)))

    def constant(self, name, data):
        """Register a parameter with explicit initial values."""
        return self._register(name, np.array(data, dtype=np.float64))

    def __getitem__(self, name):
        return self.params[name]

    def __contains__(self, name):
        return name in self.params

    def names(self):
        return sorted(self.params)

    def zero_grads(self):
        for p in self.params.values():
            p.grad = None

    # ---- checkpoint I/O -----------------------------------------------------

    def save(self, path):
        with open(path, "wb") as f:
            f.write(MAGIC)
            f.write(struct.pack("<I", VERSION))
            f.write(b"<")  # little-endian payload
            f.write(struct.pack("<q", self.seed))
            f.write(struct.pack("<I", len(self.params)))
            for name in self.names():
                p = self.params[name]
                enc = name.encode("utf-8")
                f.write(struct.pack("<H", len(enc)))
                f.write(enc)
                f.write(struct.pack("<B", p.data.ndim))
                for dim in p.data.shape:
                    f.write(struct.pack("<I", dim))
                f.write(p.data.astype("<f8").tobytes())
                acc = self.adagrad_acc.get(name)
                f.write(struct.pack("<B", 0 if acc is None else 1))
                if acc is not None:
                    f.write(acc.astype("<f8").tobytes())

    @classmethod
    def load(cls, path):
        with open(path, "rb") as f:
            raw = f.read()
        off = 0

        def take(n):
            nonlocal off
            chunk = raw[off:off + n]
            if len(chunk) != n:
                raise CheckpointError("truncated checkpoint: %s" % path)
            off += n
            return chunk

        if take(4) != MAGIC:
            raise CheckpointError("bad magic in %s" % path)
        version = struct.unpack("<I", take(4))[0]
        if version != VERSION:
            raise CheckpointError("unsupported checkpoint version %d" % version)
        if take(1) != b"<":
            raise CheckpointError("unsupported endianness tag")
        seed = struct.unpack("<q", take(8))[0]
        store = cls(seed=seed)
        count = struct.unpack("<I", take(4))[0]
        for _ in range(count):
            name_len = struct.unpack("<H", take(2))[0]
            name = take(name_len).decode("utf-8")
            ndim = struct.unpack("<B", take(1))[0]
            shape = tuple(struct.unpack("<I", take(4))[0] for _ in range(ndim))
            size = int(np.prod(shape)) if shape else 1
            values = np.frombuffer(take(size * 8), dtype="<f8").reshape(shape)
            store._register(name, values.astype(np.float64))
            if struct.unpack("<B", take(1))[0]:
                acc = np.frombuffer(take(size * 8), dtype="<f8").reshape(shape)
                store.adagrad_acc[name] = acc.astype(np.float64)
        if off != len(raw):
            raise CheckpointError("trailing bytes in %s" % path)
        return store
