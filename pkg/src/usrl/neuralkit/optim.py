"""Optimizers operating in place on a ParameterStore."""

import numpy as np

ADAGRAD_EPS = 1e-8


def sgd_step(store, lr, l2=0.0, skip=()):
    """Plain gradient descent; parameters with no gradient are untouched."""
    for name in store.names():
        if name in skip:
            continue
        p = store.params[name]
        if p.grad is None:
            continue
        g = p.grad + l2 * p.data
        p.data -= lr * g


def adagrad_step(store, lr, l2=0.0, skip=()):
    """Adagrad update theta -= lr * g / (sqrt(acc) + eps) with the L2 term
    folded into g before accumulation."""
    for name in store.names():
        if name in skip:
            continue
        p = store.params[name]
        if p.grad is None:
            continue
        g = p.grad + l2 * p.data
        acc = store.adagrad_acc.get(name)
        if acc is None:
            acc = np.zeros_like(p.data)
            store.adagrad_acc[name] = acc
        acc += g * g
        p.data -= lr * g / (np.sqrt(acc) + ADAGRAD_EPS)
