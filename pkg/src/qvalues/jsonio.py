"""JSON encoding shared by reports and fixtures.

A complex number is ``[re, im]``, a matrix is row-major nested lists of
those and a state is a flat list of them.  Output is byte-stable:
keys are sorted and floats are written with ``repr`` precision.
"""

import json

import numpy as np


def encode_complex(x):
    x = complex(x)
    return [float(x.real), float(x.imag)]


def decode_complex(pair):
    re, im = pair
    return complex(re, im)


def encode_vector(v):
    return [encode_complex(x) for x in np.asarray(v, dtype=complex).reshape(-1)]


def decode_vector(data):
    return np.array([decode_complex(p) for p in data], dtype=complex)


def encode_matrix(m):
    m = np.asarray(m, dtype=complex)
    return [[encode_complex(x) for x in row] for row in m]


def decode_matrix(data):
    return np.array([[decode_complex(p) for p in row] for row in data], dtype=complex)


def _default(obj):
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, (complex, np.complexfloating)):
        return encode_complex(obj)
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return encode_matrix(obj) if obj.ndim == 2 else encode_vector(obj)
        return obj.tolist()
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, default=_default, sort_keys=True, indent=2) + "\n"
