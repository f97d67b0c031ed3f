import pytest

from hico.configuration import read_configuration_file
from hico.encoder.encoder_config import EncoderConfig
from hico.exceptions import IllegalArgumentCombination


def test_defaults():
    cfg = EncoderConfig()
    assert cfg.domain_width == 4 * 512
    assert cfg.instance_width == 2 * 4 * 512
    assert cfg.temporal and cfg.spatial


@pytest.mark.parametrize('branches, fusion, width', [
    ('both', 'concat', 2 * 3 * 16),
    ('both', 'sum', 3 * 16),
    ('both', 'weighted', 3 * 16),
    ('temporal', 'concat', 3 * 16),
    ('spatial', 'product', 3 * 16)])
def test_instance_width(branches, fusion, width):
    cfg = EncoderConfig(C=8, L=3, out_width=16, out_frames=8, J=6,
                        branches=branches, fusion=fusion)
    assert cfg.instance_width == width


@pytest.mark.parametrize('kwargs', [
    {'s2s_kind': 'rnn'}, {'branches': 'none'}, {'fusion': 'max'},
    {'udm': 'stride'}, {'L': 0}, {'L': 4, 'out_frames': 7},
    {'L': 4, 'J': 7}])
def test_illegal(kwargs):
    base = {'C': 8, 'L': 2, 'out_frames': 8, 'J': 8, 'out_width': 8}
    base.update(kwargs)
    with pytest.raises(IllegalArgumentCombination):
        EncoderConfig(**base)


def test_disabled_branch_ignores_its_length():
    cfg = EncoderConfig(C=8, L=4, out_frames=8, J=3, branches='temporal')
    assert not cfg.spatial


def test_from_settings():
    settings = read_configuration_file(
        overrides=['encoder.C=32', 'encoder.s2s_kind=lstm'])
    cfg = EncoderConfig.from_settings(settings)
    assert cfg.C == 32 and cfg.s2s_kind == 'lstm'
    assert cfg == EncoderConfig(C=32, s2s_kind='lstm')
    assert cfg != EncoderConfig()
