'''
    Rootflow  root dynamics of real-rooted polynomials under repeated
    differentiation
    Copyright (C) 2026  Rootflow developers

    This program is free software: you can redistribute it and/or modify
    it under the terms of the GNU General Public License as published by
    the Free Software Foundation, either version 3 of the License, or
    (at your option) any later version.

    This program is distributed in the hope that it will be useful,
    but WITHOUT ANY WARRANTY; without even the implied warranty of
    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
    GNU General Public License for more details.

    You should have received a copy of the GNU General Public License
    along with this program.  If not, see <https://www.gnu.org/licenses/>.
'''

import numpy as np
from ..model import RngStream


_MASK64 = (1 << 64) - 1

def generator(stream: RngStream) -> np.random.Generator:
    """
    A numpy Generator for one (seed, stream id) pair.

    The bit generator is Philox4x64-10, a counter-based generator whose 128-bit key is the seed in
    the low word and the stream id in the high word. Its output depends only on the key and the
    counter, so every stream reproduces on every platform and streams may be drawn in any order.

    Args:
        stream (RngStream): Seed and stream id.

    Returns:
        np.random.Generator: A fresh generator positioned at the start of the stream.
    """
    key = (stream.seed & _MASK64) | ((stream.stream & _MASK64) << 64)
    return np.random.Generator(np.random.Philox(key=key))

def open_uniforms(gen: np.random.Generator, size: int) -> np.ndarray:
    """Uniform draws clipped into the open interval (0, 1), safe for every quantile function."""
    tiny = 2.0 ** -53
    return np.clip(gen.random(size), tiny, 1.0 - tiny)
