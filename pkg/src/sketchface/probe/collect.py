"""Probe-vector collection: per-layer feature vectors at one input point."""

import copy
from dataclasses import dataclass

import numpy as np
import torch

from ..errors import ValidationError
from ..models.generator import FeatureMap, probe_vector
from ..validation import check_sketch
from .receptive import check_probe_point


@dataclass
class ProbeVectorSet:
    """All (group, sketch) feature vectors of one layer at one point."""

    layer_index: int
    point: tuple
    labels: list            # (group_id, sketch_index) per row
    vectors: np.ndarray     # (n, C)

    def group_rows(self, group_id):
        idx = [i for i, (gid, _) in enumerate(self.labels) if gid == group_id]
        return self.vectors[idx]

    @property
    def group_ids(self):
        return sorted({gid for gid, _ in self.labels})


def double_precision_encoder(generator):
    """Float64 copy of the generator's encoder for numerically clean probes."""
    enc = copy.deepcopy(generator.encoder).double()
    enc.eval()
    return enc


def encoder_layer_features(encoder, sketch, layer_index, spec):
    """Run encoder blocks 0..layer_index on one sketch; post-activation output."""
    arr = check_sketch(sketch, divisor=spec.size_divisor)
    dtype = next(encoder.parameters()).dtype
    with torch.no_grad():
        x = torch.from_numpy(arr)[None, None].to(dtype) * 2.0 - 1.0
        for i in range(layer_index + 1):
            x = encoder[i](x)
    return FeatureMap(
        layer_index=layer_index,
        values=x[0].numpy(),
        stride_to_input=spec.stride(layer_index),
    )


def collect_probe_vectors(generator, groups, point=None, layers=None):
    """Extract probe vectors for every (layer, group, sketch) combination.

    ``point`` defaults to the groups' shared probe point and must be interior
    (deepest receptive field clear of the padded border).  Returns a dict
    layer_index -> ProbeVectorSet.  Features are computed in double precision
    so within-group identity is measured without low-precision noise.
    """
    spec = generator.spec
    layers = list(range(spec.n_downsample + 1)) if layers is None else sorted(set(layers))
    for layer in layers:
        if not 0 <= layer <= spec.n_downsample:
            raise ValidationError(f"layer {layer} out of range 0..{spec.n_downsample}")
    if not groups:
        raise ValidationError("no probe groups given")
    if point is None:
        points = {g.probe_point for g in groups}
        if len(points) != 1:
            raise ValidationError(f"groups disagree on probe point: {points}")
        point = next(iter(points))
    size = groups[0].sketches[0].shape[0]
    point = check_probe_point(point, size)

    encoder = double_precision_encoder(generator)
    deepest = max(layers)
    labels = []
    per_layer_vectors = {layer: [] for layer in layers}
    for group in groups:
        for idx, sketch in enumerate(group.sketches):
            labels.append((group.group_id, idx))
            arr = check_sketch(sketch, divisor=spec.size_divisor)
            dtype = next(encoder.parameters()).dtype
            with torch.no_grad():
                x = torch.from_numpy(arr)[None, None].to(dtype) * 2.0 - 1.0
                for i in range(deepest + 1):
                    x = encoder[i](x)
                    if i in per_layer_vectors:
                        fm = FeatureMap(
                            layer_index=i,
                            values=x[0].numpy(),
                            stride_to_input=spec.stride(i),
                        )
                        per_layer_vectors[i].append(probe_vector(fm, point))

    return {
        layer: ProbeVectorSet(
            layer_index=layer,
            point=tuple(point),
            labels=list(labels),
            vectors=np.stack(vecs),
        )
        for layer, vecs in per_layer_vectors.items()
    }
