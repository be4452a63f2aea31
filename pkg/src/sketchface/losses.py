"""The three-term training objective: adversarial, feature-matching, perceptual.

The total generator objective is

    total_g = l_gan_g + lambda * (mean_k(l_fm_k) + l_vgg)

with the adversarial terms summed over the three discriminator scales in
least-squares form, feature matching averaged per scale over discriminator
blocks, and the perceptual term a stage-weighted L1 over the fixed extractor.
"""

from dataclasses import dataclass

import torch

from .errors import ConfigurationError, ValidationError

PERCEPTUAL_STAGE_WEIGHTS = (1.0 / 32, 1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0)


def _check_scales(logits, name):
    if logits is None or len(logits) != 3:
        raise ValidationError(f"{name} must carry three scales")
    for k, t in enumerate(logits):
        if not torch.isfinite(t).all():
            raise ValidationError(f"non-finite logits in {name}[{k}]")


def adversarial_loss(logits_real, logits_fake, side):
    """Least-squares GAN loss summed over the three scales.

    side="discriminator": sum_k mean((real_k - 1)^2) + mean(fake_k^2);
    side="generator":     sum_k mean((fake_k - 1)^2).  The generator side
    ignores ``logits_real`` (pass None).
    """
    if side not in ("generator", "discriminator"):
        raise ValidationError(f"side must be generator|discriminator, got {side!r}")
    _check_scales(logits_fake, "logits_fake")
    if side == "generator":
        return sum(((f - 1.0) ** 2).mean() for f in logits_fake)
    _check_scales(logits_real, "logits_real")
    return sum(
        ((r - 1.0) ** 2).mean() + (f ** 2).mean()
        for r, f in zip(logits_real, logits_fake)
    )


def feature_matching_loss(feats_real, feats_fake):
    """Per-scale mean-absolute feature difference, averaged over blocks.

    Returns one scalar per scale; the cross-scale 1/3 average belongs to
    compose_objective.  Real features are treated as constants.
    """
    if len(feats_real) != len(feats_fake):
        raise ValidationError(
            f"scale count mismatch: {len(feats_real)} vs {len(feats_fake)}"
        )
    per_scale = []
    for k, (real, fake) in enumerate(zip(feats_real, feats_fake)):
        if len(real) != len(fake):
            raise ValidationError(f"block count mismatch at scale {k}")
        terms = []
        for r, f in zip(real, fake):
            if r.shape != f.shape:
                raise ValidationError(
                    f"feature shape mismatch at scale {k}: {tuple(r.shape)} vs {tuple(f.shape)}"
                )
            terms.append((f - r.detach()).abs().mean())
        per_scale.append(sum(terms) / len(terms))
    return per_scale


def perceptual_loss(x, x_hat, extractor):
    """Stage-weighted L1 between extractor features of target and output."""
    if x.shape != x_hat.shape:
        raise ValidationError(f"shape mismatch: {tuple(x.shape)} vs {tuple(x_hat.shape)}")
    feats_x = extractor(x)
    feats_hat = extractor(x_hat)
    loss = 0.0
    for w, fx, fh in zip(PERCEPTUAL_STAGE_WEIGHTS, feats_x, feats_hat):
        loss = loss + w * (fh - fx.detach()).abs().mean()
    return loss


@dataclass(frozen=True)
class LossReport:
    """One step's scalar losses; total_g follows the composition above."""

    l_gan_g: float
    l_gan_d: float
    l_fm: float
    l_vgg: float
    total_g: float
    lambda_weight: float

    def to_log_entry(self, step):
        return {
            "step": step,
            "l_gan_g": self.l_gan_g,
            "l_gan_d": self.l_gan_d,
            "l_fm": self.l_fm,
            "l_vgg": self.l_vgg,
            "total_g": self.total_g,
        }


def compose_objective(l_gan_g, l_gan_d, fm_per_scale, l_vgg, lambda_weight):
    """Combine the loss parts into a LossReport.

    ``fm_per_scale`` is the sequence of per-scale feature-matching values;
    their mean enters the report as l_fm.  Generator and discriminator
    objectives are reported separately (they alternate in training).
    """
    if lambda_weight < 0:
        raise ConfigurationError(f"lambda must be non-negative, got {lambda_weight}")
    parts = [float(l_gan_g), float(l_gan_d), float(l_vgg)] + [float(v) for v in fm_per_scale]
    if not all(map(_finite, parts)):
        raise ValidationError(f"non-finite loss parts: {parts}")
    fm = [float(v) for v in fm_per_scale]
    l_fm = sum(fm) / len(fm) if fm else 0.0
    total_g = float(l_gan_g) + lambda_weight * (l_fm + float(l_vgg))
    return LossReport(
        l_gan_g=float(l_gan_g),
        l_gan_d=float(l_gan_d),
        l_fm=l_fm,
        l_vgg=float(l_vgg),
        total_g=total_g,
        lambda_weight=float(lambda_weight),
    )


def _finite(v):
    return v == v and abs(v) != float("inf")
