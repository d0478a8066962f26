"""Peephole LSTM cell: batched forward and exact backward pass.

Gate equations, with sigma the logistic sigmoid and o the Hadamard
product (peephole terms read the cell state; the candidate has none):

    i_t = sigma(W_i x_t + U_i h_{t-1} + v_i o c_{t-1} + b_i)
    f_t = sigma(W_f x_t + U_f h_{t-1} + v_f o c_{t-1} + b_f)
    c_t = f_t o c_{t-1} + i_t o tanh(W_c x_t + U_c h_{t-1} + b_c)
    o_t = sigma(W_o x_t + U_o h_{t-1} + v_o o c_t + b_o)
    h_t = o_t o tanh(c_t)

Peepholes are diagonal (elementwise vectors v_i, v_f, v_o); note v_o
reads the *current* cell state, which the backward pass must respect.
Weights for the four gates are stacked along the first axis in the
order (i, f, candidate, o) so each step costs two matrix products.

Masked timesteps pass both states through unchanged, which is exactly
"skipping" padded steps: appending padded steps can never change any
real activation or gradient.

Dropout uses one mask per sequence reused across all timesteps, with
inverted scaling: the input mask multiplies x_t inside the W products,
the recurrent mask multiplies h_{t-1} inside the U products.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ShapeMismatchError


def sigmoid(z):
    # numerically symmetric form, no overflow for large |z|
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


@dataclass
class LstmParams:
    """Stacked gate weights; rows [0:H) drive i, [H:2H) f, [2H:3H) the
    candidate, [3H:4H) o."""

    W: np.ndarray  # (4H, C_in)
    U: np.ndarray  # (4H, H)
    b: np.ndarray  # (4H,)
    v_i: np.ndarray | None  # (H,) peepholes, None when disabled
    v_f: np.ndarray | None
    v_o: np.ndarray | None

    @property
    def hidden(self) -> int:
        return self.U.shape[1]

    @property
    def n_in(self) -> int:
        return self.W.shape[1]

    @property
    def peepholes(self) -> bool:
        return self.v_i is not None

    def named_arrays(self) -> list[tuple[str, np.ndarray]]:
        out = [("W", self.W), ("U", self.U), ("b", self.b)]
        if self.peepholes:
            out += [("v_i", self.v_i), ("v_f", self.v_f), ("v_o", self.v_o)]
        return out


def init_lstm_params(
    n_in: int, hidden: int, peepholes: bool, rng: np.random.Generator, dtype=np.float64
) -> LstmParams:
    """Glorot-uniform input weights, orthogonal recurrent weights per
    gate, zero biases except the forget gate at 1, small uniform
    peepholes."""
    limit = np.sqrt(6.0 / (n_in + hidden))
    W = rng.uniform(-limit, limit, size=(4 * hidden, n_in))
    U = np.concatenate([_orthogonal(hidden, rng) for _ in range(4)], axis=0)
    b = np.zeros(4 * hidden)
    b[hidden : 2 * hidden] = 1.0
    if peepholes:
        vlim = np.sqrt(6.0 / (2 * hidden))
        v_i, v_f, v_o = (rng.uniform(-vlim, vlim, size=hidden) for _ in range(3))
    else:
        v_i = v_f = v_o = None
    return LstmParams(
        W.astype(dtype),
        U.astype(dtype),
        b.astype(dtype),
        None if v_i is None else v_i.astype(dtype),
        None if v_f is None else v_f.astype(dtype),
        None if v_o is None else v_o.astype(dtype),
    )


def _orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.standard_normal((n, n))
    q, r = np.linalg.qr(a)
    return q * np.sign(np.diag(r))


def lstm_step(
    params: LstmParams,
    x_t: np.ndarray,
    state: tuple[np.ndarray, np.ndarray],
    dropout_masks: tuple[np.ndarray, np.ndarray] | None = None,
):
    """One timestep for a (B, C_in) input slab (1-D input promoted to
    B=1). Returns (h_t, c_t). Masked-step passthrough and the full
    backward pass live in the sequence functions below; this is the
    reference single-step contract."""
    squeeze = x_t.ndim == 1
    x = np.atleast_2d(x_t)
    h_prev, c_prev = (np.atleast_2d(s) for s in state)
    H = params.hidden
    if x.shape[1] != params.n_in:
        raise ShapeMismatchError(f"input width {x.shape[1]}, expected {params.n_in}")
    if h_prev.shape[1] != H or c_prev.shape[1] != H:
        raise ShapeMismatchError("state width does not match hidden size")
    if dropout_masks is not None:
        dx, dh = dropout_masks
        x = x * dx
        h_prev = h_prev * dh
        c_prev = c_prev  # cell state is never dropped
    z = x @ params.W.T + h_prev @ params.U.T + params.b
    zi, zf, zg, zo = z[:, :H], z[:, H : 2 * H], z[:, 2 * H : 3 * H], z[:, 3 * H :]
    if params.peepholes:
        i = sigmoid(zi + params.v_i * c_prev)
        f = sigmoid(zf + params.v_f * c_prev)
    else:
        i = sigmoid(zi)
        f = sigmoid(zf)
    g = np.tanh(zg)
    c = f * c_prev + i * g
    o = sigmoid(zo + params.v_o * c) if params.peepholes else sigmoid(zo)
    h = o * np.tanh(c)
    if squeeze:
        return h[0], c[0]
    return h, c


def lstm_forward(
    params: LstmParams,
    x: np.ndarray,  # (T, B, C_in)
    mask: np.ndarray,  # (T, B) bool
    dx_mask: np.ndarray | None = None,  # (B, C_in)
    dh_mask: np.ndarray | None = None,  # (B, H)
):
    """Run the cell over a whole sequence batch.

    Returns (h_seq (T, B, H), cache). The input-side product for all
    timesteps is batched into one matrix multiply; only the recurrence
    loops.
    """
    T, B, _ = x.shape
    H = params.hidden
    if mask.shape != (T, B):
        raise ShapeMismatchError("mask shape does not match input")
    xd = x if dx_mask is None else x * dx_mask[None, :, :]
    zx = xd.reshape(T * B, -1) @ params.W.T
    zx = zx.reshape(T, B, 4 * H) + params.b

    h = np.zeros((B, H), dtype=x.dtype)
    c = np.zeros((B, H), dtype=x.dtype)
    h_seq = np.empty((T, B, H), dtype=x.dtype)
    cache = {
        "i": np.empty((T, B, H), dtype=x.dtype),
        "f": np.empty((T, B, H), dtype=x.dtype),
        "g": np.empty((T, B, H), dtype=x.dtype),
        "o": np.empty((T, B, H), dtype=x.dtype),
        "c_prev": np.empty((T, B, H), dtype=x.dtype),
        "c_hat": np.empty((T, B, H), dtype=x.dtype),
        "tanh_c": np.empty((T, B, H), dtype=x.dtype),
        "hd_prev": np.empty((T, B, H), dtype=x.dtype),
        "xd": xd,
        "mask": mask,
        "dx_mask": dx_mask,
        "dh_mask": dh_mask,
    }
    for t in range(T):
        hd = h if dh_mask is None else h * dh_mask
        z = zx[t] + hd @ params.U.T
        zi, zf, zg, zo = z[:, :H], z[:, H : 2 * H], z[:, 2 * H : 3 * H], z[:, 3 * H :]
        if params.peepholes:
            i = sigmoid(zi + params.v_i * c)
            f = sigmoid(zf + params.v_f * c)
        else:
            i = sigmoid(zi)
            f = sigmoid(zf)
        g = np.tanh(zg)
        c_hat = f * c + i * g
        o = sigmoid(zo + params.v_o * c_hat) if params.peepholes else sigmoid(zo)
        tanh_c = np.tanh(c_hat)
        h_hat = o * tanh_c

        m = mask[t][:, None]
        cache["i"][t] = i
        cache["f"][t] = f
        cache["g"][t] = g
        cache["o"][t] = o
        cache["c_prev"][t] = c
        cache["c_hat"][t] = c_hat
        cache["tanh_c"][t] = tanh_c
        cache["hd_prev"][t] = hd
        c = np.where(m, c_hat, c)
        h_new = np.where(m, h_hat, h)
        h_seq[t] = h_new
        h = h_new
    cache["h_seq"] = h_seq
    return h_seq, cache


def lstm_backward(params: LstmParams, cache: dict, dh_seq: np.ndarray):
    """Backpropagate through `lstm_forward`.

    dh_seq is the loss gradient w.r.t. every h_t output. Returns
    (grads dict keyed like named_arrays, dx (T, B, C_in)).
    """
    mask = cache["mask"]
    xd = cache["xd"]
    T, B, H = dh_seq.shape
    dz_seq = np.empty((T, B, 4 * H), dtype=dh_seq.dtype)
    dh = np.zeros((B, H), dtype=dh_seq.dtype)
    dc = np.zeros((B, H), dtype=dh_seq.dtype)
    dv_i = np.zeros(H, dtype=dh_seq.dtype) if params.peepholes else None
    dv_f = np.zeros(H, dtype=dh_seq.dtype) if params.peepholes else None
    dv_o = np.zeros(H, dtype=dh_seq.dtype) if params.peepholes else None

    for t in range(T - 1, -1, -1):
        m = mask[t][:, None]
        dh = dh + dh_seq[t]
        i, f, g, o = cache["i"][t], cache["f"][t], cache["g"][t], cache["o"][t]
        c_prev, c_hat, tanh_c = (
            cache["c_prev"][t],
            cache["c_hat"][t],
            cache["tanh_c"][t],
        )
        dh_hat = dh * m
        dh_pass = dh * (1.0 - m)
        dc_hat = dc * m
        dc_pass = dc * (1.0 - m)

        do = dh_hat * tanh_c
        dc_hat = dc_hat + dh_hat * o * (1.0 - tanh_c * tanh_c)
        dzo = do * o * (1.0 - o)
        if params.peepholes:
            dv_o += (dzo * c_hat).sum(axis=0)
            dc_hat = dc_hat + dzo * params.v_o

        df = dc_hat * c_prev
        di = dc_hat * g
        dg = dc_hat * i
        dc_prev = dc_hat * f

        dzi = di * i * (1.0 - i)
        dzf = df * f * (1.0 - f)
        dzg = dg * (1.0 - g * g)
        if params.peepholes:
            dv_i += (dzi * c_prev).sum(axis=0)
            dv_f += (dzf * c_prev).sum(axis=0)
            dc_prev = dc_prev + dzi * params.v_i + dzf * params.v_f

        dz = np.concatenate([dzi, dzf, dzg, dzo], axis=1)
        dz_seq[t] = dz
        dhd = dz @ params.U
        if cache["dh_mask"] is not None:
            dhd = dhd * cache["dh_mask"]
        dh = dh_pass + dhd
        dc = dc_pass + dc_prev

    dz_flat = dz_seq.reshape(T * B, 4 * H)
    dW = dz_flat.T @ xd.reshape(T * B, -1)
    hd_prev = cache["hd_prev"].reshape(T * B, H)
    dU = dz_flat.T @ hd_prev
    db = dz_flat.sum(axis=0)
    dxd = (dz_flat @ params.W).reshape(T, B, -1)
    if cache["dx_mask"] is not None:
        dxd = dxd * cache["dx_mask"][None, :, :]

    grads = {"W": dW, "U": dU, "b": db}
    if params.peepholes:
        grads.update({"v_i": dv_i, "v_f": dv_f, "v_o": dv_o})
    return grads, dxd
