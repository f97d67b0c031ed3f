# -*- coding: utf-8 -*-
import copy

from hico import configuration
from hico.augmentation.augmentations import AugmentConfig
from hico.encoder.encoder_config import EncoderConfig
from hico.exceptions import ConfigValueError, IllegalArgumentCombination


class TrainConfig(object):
    """Every hyperparameter of one pre-training run.

    The fields of the ``train`` section are attributes, the encoder and
    augmentation sections are available as :class:`EncoderConfig` and
    :class:`AugmentConfig`. The full settings dict is kept in
    ``settings`` and goes into every checkpoint.

    Args:
        settings (dict): Defaults to
            :func:`hico.configuration.provide_default_settings`.
    """
    def __init__(self, settings=None):
        if settings is None:
            settings = configuration.provide_default_settings()
        configuration.check_settings(settings)
        self.settings = copy.deepcopy(settings)
        for key, value in self.settings['train'].items():
            setattr(self, key, value)
        self.encoder = EncoderConfig.from_settings(self.settings)
        self.augment = AugmentConfig.from_settings(self.settings)
        if self.augment.out_frames != self.encoder.out_frames:
            raise ConfigValueError(
                'augment.out_frames', str(self.augment.out_frames))
        # the clip and part queues take batch_size * L keys per step
        keys_per_step = self.batch_size * self.encoder.L
        if self.queue_capacity < keys_per_step:
            raise IllegalArgumentCombination(
                'train.queue_capacity={} can not hold the {} keys of one '
                'batch (train.batch_size * encoder.L)'.format(
                    self.queue_capacity, keys_per_step))

    @classmethod
    def from_overrides(cls, *overrides):
        """Defaults changed by ``section.key=value`` strings."""
        return cls(configuration.read_configuration_file(
            overrides=overrides))

    def __repr__(self):
        return 'TrainConfig(epochs={}, batch_size={}, lr={}, encoder={})'\
            .format(self.epochs, self.batch_size, self.lr, self.encoder)
