"""Scikit-learn style wrapper around the training stack.

SketchToFaceTranslator treats sketch-to-photo translation as a fit/predict
problem over arrays: X is a batch of sketches (N, H, W) in [0, 1] and y a
batch of photos (N, 3, H, W) in [-1, 1].  Hyperparameters live in
``__init__`` so the estimator composes with model selection tooling
(get_params/set_params/clone come from BaseEstimator).
"""

import tempfile
from pathlib import Path

import numpy as np
from sklearn.base import BaseEstimator

from .errors import ValidationError
from .models.generator import generator_forward
from .train.checkpoint import load_generator, save_checkpoint
from .train.config import TrainConfig
from .train.trainer import ArrayPairSource, train
from .validation import check_photo_batch, check_sketch_batch


class SketchToFaceTranslator(BaseEstimator):
    """Adversarially trained sketch-to-photo translator."""

    def __init__(
        self,
        base_channels=48,
        n_downsample=4,
        n_resblocks=9,
        norm_free_prefix=2,
        lambda_weight=10.0,
        learning_rate=2e-4,
        beta1=0.5,
        beta2=0.999,
        batch_size=1,
        epochs=1,
        augment_d=25.0,
        augment_theta=7.0,
        perceptual_mode="random_fixed",
        perceptual_width=64,
        discriminator_width=64,
        seed=0,
        work_dir=None,
    ):
        self.base_channels = base_channels
        self.n_downsample = n_downsample
        self.n_resblocks = n_resblocks
        self.norm_free_prefix = norm_free_prefix
        self.lambda_weight = lambda_weight
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.batch_size = batch_size
        self.epochs = epochs
        self.augment_d = augment_d
        self.augment_theta = augment_theta
        self.perceptual_mode = perceptual_mode
        self.perceptual_width = perceptual_width
        self.discriminator_width = discriminator_width
        self.seed = seed
        self.work_dir = work_dir

    def _config(self, image_size):
        return TrainConfig(
            base_channels=self.base_channels,
            n_downsample=self.n_downsample,
            n_resblocks=self.n_resblocks,
            norm_free_prefix=self.norm_free_prefix,
            lambda_weight=self.lambda_weight,
            learning_rate=self.learning_rate,
            beta1=self.beta1,
            beta2=self.beta2,
            batch_size=self.batch_size,
            epochs=self.epochs,
            image_size=image_size,
            augment_d=self.augment_d,
            augment_theta=self.augment_theta,
            perceptual_mode=self.perceptual_mode,
            perceptual_width=self.perceptual_width,
            discriminator_width=self.discriminator_width,
            seed=self.seed,
        )

    def fit(self, X, y):
        """Train generator and discriminator on paired (sketch, photo) arrays."""
        X = check_sketch_batch(X, divisor=2 ** self.n_downsample)
        y = check_photo_batch(y)
        if X.shape[0] != y.shape[0]:
            raise ValidationError(
                f"{X.shape[0]} sketches but {y.shape[0]} photos"
            )
        if X.shape[1:] != y.shape[2:]:
            raise ValidationError(
                f"sketch size {X.shape[1:]} does not match photo size {y.shape[2:]}"
            )
        cfg = self._config(image_size=X.shape[1])
        source = ArrayPairSource(list(X), list(y))
        if self.work_dir is not None:
            result = train(cfg, source=source, out_dir=self.work_dir)
        else:
            with tempfile.TemporaryDirectory() as tmp:
                result = train(cfg, source=source, out_dir=tmp)
        self.generator_ = result.generator
        self.discriminator_ = result.discriminator
        self.spec_ = result.generator.spec
        self.image_size_ = X.shape[1]
        self.n_steps_ = result.steps
        return self

    def predict(self, X):
        """Generate photos (N, 3, H, W) in [-1, 1] from sketches."""
        self._check_fitted()
        X = check_sketch_batch(X, divisor=self.spec_.size_divisor)
        return np.stack([generator_forward(self.generator_, x) for x in X])

    def transform(self, X):
        return self.predict(X)

    def _check_fitted(self):
        if not hasattr(self, "generator_"):
            raise ValidationError("estimator is not fitted; call fit(X, y) first")

    def save(self, path):
        """Persist the fitted generator as a regular checkpoint."""
        self._check_fitted()
        return save_checkpoint(
            Path(path),
            self.generator_,
            self.discriminator_,
            seed=self.seed,
            step=self.n_steps_,
            discriminator_width=self.discriminator_width,
        )

    @classmethod
    def from_checkpoint(cls, path):
        """Rebuild a fitted translator (generator only) from a checkpoint."""
        generator, meta = load_generator(path)
        spec = generator.spec
        est = cls(
            base_channels=spec.base_channels,
            n_downsample=spec.n_downsample,
            n_resblocks=spec.n_resblocks,
            norm_free_prefix=spec.norm_free_prefix,
            seed=meta.get("seed", 0),
        )
        est.generator_ = generator
        est.discriminator_ = None
        est.spec_ = spec
        est.n_steps_ = meta.get("step", 0)
        return est
