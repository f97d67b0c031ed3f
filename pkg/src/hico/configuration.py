# -*- coding: utf-8 -*-
import configparser
import copy
import os
from warnings import warn

from hico.exceptions import ConfigValueError, UnknownConfigKey

# configparser needs a section header; the files themselves are flat.
_TOP = 'hico'


def provide_default_settings():
    settings = {}
    settings['data'] = {}
    settings['data']['classes'] = 4
    settings['data']['per_class'] = 100
    settings['data']['test_per_class'] = 0
    settings['data']['frames'] = 64
    settings['data']['joints'] = 25
    settings['data']['noise'] = 0.1
    settings['data']['seed'] = 0

    settings['augment'] = {}
    settings['augment']['shear_amplitude'] = 0.5
    settings['augment']['jitter_joint_fraction'] = 0.15
    settings['augment']['jitter_magnitude'] = 0.1
    settings['augment']['crop_ratio_min'] = 0.5
    settings['augment']['out_frames'] = 64

    settings['encoder'] = {}
    settings['encoder']['C'] = 512
    settings['encoder']['L'] = 4
    settings['encoder']['s2s_kind'] = 'gru'
    settings['encoder']['out_frames'] = 64
    settings['encoder']['J'] = 25
    settings['encoder']['out_width'] = 512
    settings['encoder']['branches'] = 'both'
    settings['encoder']['fusion'] = 'concat'
    settings['encoder']['udm'] = 'conv_max'

    settings['contrast'] = {}
    settings['contrast']['dim'] = 128
    settings['contrast']['head_hidden'] = 512

    settings['loss'] = {}
    settings['loss']['instance'] = True
    settings['loss']['domain'] = True
    settings['loss']['clip_part'] = True

    settings['train'] = {}
    settings['train']['epochs'] = 450
    settings['train']['batch_size'] = 64
    settings['train']['lr'] = 0.01
    settings['train']['lr_decay_epochs'] = [350]
    settings['train']['lr_decay_factor'] = 0.1
    settings['train']['sgd_momentum'] = 0.9
    settings['train']['weight_decay'] = 0.0001
    settings['train']['queue_capacity'] = 2048
    settings['train']['tau'] = 0.2
    settings['train']['m_k'] = 0.999
    settings['train']['seed'] = 0
    settings['train']['dtype'] = 'float32'
    settings['train']['log_every'] = 1
    settings['train']['view'] = 'joint'

    settings['probe'] = {}
    settings['probe']['epochs'] = 80
    settings['probe']['lr'] = 2.0
    settings['probe']['lr_decay_epochs'] = [50, 70]
    settings['probe']['lr_decay_factor'] = 0.1
    settings['probe']['batch_size'] = 64
    settings['probe']['momentum'] = 0.9

    settings['finetune'] = {}
    settings['finetune']['epochs'] = 50
    settings['finetune']['lr'] = 0.1
    settings['finetune']['lr_decay_epochs'] = [31, 44]
    settings['finetune']['lr_decay_factor'] = 0.1
    settings['finetune']['batch_size'] = 64
    settings['finetune']['momentum'] = 0.9
    settings['finetune']['label_fraction'] = 1.0

    settings['eval'] = {}
    settings['eval']['view'] = 'joint'
    return settings


def desk_preset():
    """Overrides that shrink pre-training to a few minutes on a desktop.

    Returns:
        list: ``section.key=value`` strings.
    """
    return ['encoder.C=64', 'encoder.L=3', 'encoder.out_width=64',
            'encoder.out_frames=64', 'augment.out_frames=64',
            'train.queue_capacity=512', 'train.batch_size=32',
            'train.epochs=50', 'train.lr=0.01', 'train.lr_decay_epochs=40']


_choices = {
    ('encoder', 's2s_kind'): ('gru', 'lstm', 'transformer'),
    ('encoder', 'branches'): ('both', 'temporal', 'spatial'),
    ('encoder', 'fusion'): ('concat', 'sum', 'product', 'weighted'),
    ('encoder', 'udm'): ('conv_max', 'conv_mean', 'max', 'mean'),
    ('train', 'dtype'): ('float32', 'float64'),
    ('train', 'view'): ('joint', 'bone', 'motion'),
    ('eval', 'view'): ('joint', 'bone', 'motion')}

_boolean_states = configparser.ConfigParser.BOOLEAN_STATES


def valid_keys(settings=None):
    if settings is None:
        settings = provide_default_settings()
    return ['{}.{}'.format(section, key)
            for section in settings for key in settings[section]]


def _split_key(full_key, settings):
    try:
        section, key = full_key.strip().split('.', 1)
    except ValueError:
        raise UnknownConfigKey(full_key, valid_keys(settings))
    if section not in settings or key not in settings[section]:
        raise UnknownConfigKey(full_key, valid_keys(settings))
    return section, key


def get_correct_type(section, key, text, settings):
    """Gives e.g. the boolean True for the string 'on'"""
    default = provide_default_settings()[section][key]
    text = text.strip()
    full_key = '{}.{}'.format(section, key)
    try:
        if isinstance(default, bool):
            return _boolean_states[text.lower()]
        elif isinstance(default, int):
            return int(text)
        elif isinstance(default, float):
            return float(text)
        elif isinstance(default, list):
            return [int(x) for x in text.replace(',', ' ').split()]
        elif (section, key) in _choices:
            if text not in _choices[(section, key)]:
                raise ValueError(text)
            return text
        else:
            return text
    except (KeyError, ValueError):
        raise ConfigValueError(full_key, text, valid_keys(settings))


def apply_override(settings, override):
    """Apply one ``section.key=value`` string to ``settings`` inplace.

    Args:
        settings (dict):
        override (str):

    Returns:
        None:
    """
    if '=' not in override:
        raise ConfigValueError(override, '', valid_keys(settings))
    full_key, text = override.split('=', 1)
    section, key = _split_key(full_key, settings)
    settings[section][key] = get_correct_type(section, key, text, settings)


def read_configuration_file(filepath=None, overrides=(), base=None):
    """Read a configuration file and merge command line overrides.

    The file holds one ``section.key = value`` pair per line,
    ``#`` starts a comment.
    Values from ``overrides`` win over values from the file, which in turn
    win over the defaults.

    Args:
        filepath (str): Path of the file. If it is None, only the defaults
            and the overrides are used.
        overrides (sequence): ``section.key=value`` strings.
        base (dict): Settings to start from instead of the defaults.

    Returns:
        dict: The merged settings.
    """
    if base is None:
        new = provide_default_settings()
    else:
        new = copy.deepcopy(base)
    if filepath is not None:
        config = configparser.ConfigParser(interpolation=None,
                                           delimiters=('=',))
        config.optionxform = str
        with open(filepath, encoding='utf-8') as f:
            config.read_string('[{}]\n'.format(_TOP) + f.read())
        for full_key, text in config[_TOP].items():
            section, key = _split_key(full_key, new)
            new[section][key] = get_correct_type(section, key, text, new)
    for override in overrides:
        apply_override(new, override)
    check_settings(new)
    return new


def check_settings(settings):
    """Check relations between keys that single values can not express."""
    train = settings['train']
    decays = train['lr_decay_epochs']
    if sorted(decays) != decays or any(d >= train['epochs'] for d in decays):
        raise ConfigValueError(
            'train.lr_decay_epochs',
            ','.join(str(x) for x in train['lr_decay_epochs']))
    if not train['tau'] > 0:
        raise ConfigValueError('train.tau', str(train['tau']))
    if not 0. <= train['m_k'] <= 1.:
        raise ConfigValueError('train.m_k', str(train['m_k']))


def _format_value(value):
    if isinstance(value, bool):
        return 'on' if value else 'off'
    elif isinstance(value, list):
        return ','.join(str(x) for x in value)
    elif isinstance(value, float):
        return repr(value)
    return str(value)


def to_text(settings):
    lines = []
    for section in settings:
        for key in settings[section]:
            lines.append('{}.{} = {}'.format(
                section, key, _format_value(settings[section][key])))
    return '\n'.join(lines) + '\n'


def write_configuration_file(settings, filepath, overwrite=True):
    """Write the effective settings.

    .. note:: Since a file is permamently written, this function
        is strictly speaking not sideeffect free.

    Args:
        settings (dict):
        filepath (str): Where to write the file.
        overwrite (bool):

    Returns:
        None:
    """
    if os.path.isfile(filepath) and not overwrite:
        warn('File exists already and overwrite is False.')
    else:
        with open(filepath, 'w', encoding='utf-8') as configfile:
            configfile.write(to_text(settings))


settings = provide_default_settings()
