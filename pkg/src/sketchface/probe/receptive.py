"""Receptive-field arithmetic for the encoder layers L0..L4.

The encoder chain is one 7x7 stride-1 convolution followed by 3x3 stride-2
convolutions, so sizes/strides compose as K' = K + (k-1)*S, S' = S*s:
sizes 7, 9, 13, 21, 37 and strides 1, 2, 4, 8, 16 with defaults.
"""

from dataclasses import dataclass

from ..errors import ValidationError

# (kernel, stride) of each encoder convolution
ENCODER_CHAIN = [(7, 1), (3, 2), (3, 2), (3, 2), (3, 2)]


@dataclass(frozen=True)
class ReceptiveField:
    size: int    # side of the square input window, pixels
    stride: int  # input pixels per feature step


def receptive_field(layer_index, chain=None):
    """Receptive-field size and stride of encoder layer L{layer_index}."""
    chain = ENCODER_CHAIN if chain is None else chain
    if not 0 <= layer_index < len(chain):
        raise ValidationError(
            f"layer index {layer_index} out of range 0..{len(chain) - 1}"
        )
    size, stride = 1, 1
    for k, s in chain[: layer_index + 1]:
        size = size + (k - 1) * stride
        stride = stride * s
    return ReceptiveField(size=size, stride=stride)


def receptive_field_table(chain=None):
    chain = ENCODER_CHAIN if chain is None else chain
    return [receptive_field(i, chain) for i in range(len(chain))]


# margin from the border inside which probe points are rejected: half the
# deepest receptive field plus the front convolution's reflection reach
PROBE_BORDER_MARGIN = receptive_field(len(ENCODER_CHAIN) - 1).size // 2 + 4


def check_probe_point(point, size):
    """Reject points whose deepest receptive field touches the padded border."""
    x, y = int(point[0]), int(point[1])
    m = PROBE_BORDER_MARGIN
    if not (m < x < size - 1 - m and m < y < size - 1 - m):
        raise ValidationError(
            f"probe point ({x}, {y}) too close to the border for a {size}x{size} "
            f"input; keep more than {m} pixels from every edge so reflection "
            f"padding cannot contaminate the receptive field"
        )
    return x, y
