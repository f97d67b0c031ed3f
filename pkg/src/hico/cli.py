# -*- coding: utf-8 -*-
"""Command line interface, installed as ``hico``.

Exit codes: 0 on success, 2 on usage errors, 1 on runtime errors.
Every command writes the effective configuration (``config.txt``), the
installed versions (``versions.txt``) and its numbers (``metrics.txt``)
into the ``--out`` directory.
"""
import argparse
import logging
import os
import sys

import numpy as np
import pandas as pd

from hico import configuration
from hico.evaluation.clustering import davies_bouldin
from hico.evaluation.extraction import extract_embeddings
from hico.evaluation.protocols import (ProbeConfig, cosine_scores, finetune,
                                       fuse_view_scores, probe_scores)
from hico.exceptions import (ConfigValueError, IllegalArgumentCombination,
                             UnknownConfigKey)
from hico.skeleton_sequences.dataset import MANIFEST_NAME, \
    DatasetManifest, synth_dataset
from hico.training.checkpoint import Checkpoint
from hico.training.pretraining import pretrain, write_trace
from hico.training.train_config import TrainConfig
from hico.utilities._print_versions import versions_text

logger = logging.getLogger('hico')

CHECKPOINT_NAME = 'checkpoint.hck'
TRACE_NAME = 'loss_trace.csv'

ABLATION_AXES = {
    'granularity': ('1', '2', '3', '4'),
    'branches': ('both', 'temporal', 'spatial'),
    'loss': ('instance', 'instance+domain', 'all'),
    'udm': ('conv_max', 'conv_mean', 'max', 'mean'),
    'fusion': ('concat', 'sum', 'product', 'weighted'),
    's2s': ('gru', 'lstm', 'transformer')}

_loss_rows = {
    'instance': ('on', 'off', 'off'),
    'instance+domain': ('on', 'on', 'off'),
    'all': ('on', 'on', 'on')}


class UsageError(Exception):
    pass


def ablation_overrides(axis, value):
    """``section.key=value`` strings of one ablation row."""
    if axis == 'granularity':
        return ['encoder.L={}'.format(value)]
    elif axis == 'branches':
        return ['encoder.branches={}'.format(value)]
    elif axis == 'loss':
        if value not in _loss_rows:
            raise UsageError('loss rows are {}'.format(sorted(_loss_rows)))
        return ['loss.{}={}'.format(key, state) for key, state in
                zip(('instance', 'domain', 'clip_part'), _loss_rows[value])]
    elif axis == 'udm':
        return ['encoder.udm={}'.format(value)]
    elif axis == 'fusion':
        return ['encoder.fusion={}'.format(value)]
    elif axis == 's2s':
        return ['encoder.s2s_kind={}'.format(value)]
    raise UsageError('Unknown axis {!r}, choose from {}'.format(
        axis, sorted(ABLATION_AXES)))


def parse_config(path=None, overrides=(), preset=None):
    """Merge defaults, preset, configuration file and overrides.

    Later sources win: defaults, then the preset, then the file, then the
    ``--set`` overrides.

    Returns:
        dict: The effective settings.
    """
    if path is not None and not os.path.isfile(path):
        raise UsageError('Configuration file {} does not exist'.format(path))
    base = configuration.provide_default_settings()
    if preset == 'desk':
        base = configuration.read_configuration_file(
            overrides=configuration.desk_preset(), base=base)
    elif preset is not None:
        raise UsageError('Unknown preset {!r}'.format(preset))
    return configuration.read_configuration_file(path, overrides=overrides,
                                                 base=base)


def write_metrics(metrics, out_dir):
    with open(os.path.join(out_dir, 'metrics.txt'), 'w',
              encoding='utf-8') as f:
        for key, value in metrics.items():
            f.write('{} = {}\n'.format(key, value))


def _load_manifest(args):
    if args.manifest is None:
        raise UsageError('--manifest is required')
    path = args.manifest
    if os.path.isdir(path):
        path = os.path.join(path, MANIFEST_NAME)
    return DatasetManifest.from_tsv(path)


def _checkpoints(args, views):
    if not args.checkpoint:
        raise UsageError('--checkpoint is required')
    if len(args.checkpoint) not in (1, len(views)):
        raise UsageError('Give one checkpoint or one per view')
    paths = args.checkpoint * (len(views) // len(args.checkpoint))
    return [Checkpoint.load(path) for path in paths]


def _views(args, settings):
    return args.view if args.view else [settings['eval']['view']]


def _tables(ckpt, manifest, view):
    train, test = manifest.subset('train'), manifest.subset('test')
    if len(train) == 0 or len(test) == 0:
        raise UsageError('The manifest needs train and test items')
    return (extract_embeddings(ckpt, train, view),
            extract_embeddings(ckpt, test, view))


def _accuracy(predicted, labels):
    return float(np.mean(np.asarray(predicted) == np.asarray(labels)))


def cmd_synth(args, settings):
    data = settings['data']
    manifest = synth_dataset(
        data['classes'], data['per_class'], data['frames'], data['joints'],
        data['seed'], args.out, noise=data['noise'],
        n_test_per_class=data['test_per_class'])
    return {'items': len(manifest), 'classes': manifest.n_classes}


def cmd_pretrain(args, settings):
    manifest = _load_manifest(args)
    cfg = TrainConfig(settings)
    resume = Checkpoint.load(args.resume) if args.resume else None
    ckpt_path = os.path.join(args.out, CHECKPOINT_NAME)
    ckpt, trace = pretrain(manifest, cfg, resume=resume,
                           workers=args.workers, checkpoint_path=ckpt_path)
    ckpt.save(ckpt_path)
    write_trace(trace, os.path.join(args.out, TRACE_NAME))
    metrics = {'epochs': ckpt.epoch, 'steps': ckpt.step}
    if len(trace):
        metrics['final_loss'] = trace['total'].iloc[-1]
    return metrics


def cmd_embed(args, settings):
    manifest = _load_manifest(args)
    views = _views(args, settings)
    metrics = {}
    for ckpt, view in zip(_checkpoints(args, views), views):
        table = extract_embeddings(ckpt, manifest, view)
        table.to_csv(os.path.join(args.out, 'embeddings_{}.csv'.format(view)))
        table.to_emb(os.path.join(args.out, 'embeddings_{}.emb'.format(view)))
        metrics['rows_{}'.format(view)] = len(table)
        metrics['width_{}'.format(view)] = table.width
    return metrics


def cmd_probe(args, settings):
    manifest = _load_manifest(args)
    views = _views(args, settings)
    cfg = ProbeConfig.from_settings(settings, 'probe')
    metrics, scores, labels = {}, [], None
    for ckpt, view in zip(_checkpoints(args, views), views):
        train, test = _tables(ckpt, manifest, view)
        scores.append(probe_scores(train, test, cfg))
        labels = test.labels
        metrics['probe_{}'.format(view)] = _accuracy(
            np.argmax(scores[-1], axis=1), labels)
    if len(views) > 1:
        metrics['probe_fused'] = _accuracy(fuse_view_scores(scores), labels)
    return metrics


def cmd_retrieve(args, settings):
    manifest = _load_manifest(args)
    views = _views(args, settings)
    metrics, scores, tables = {}, [], None
    for ckpt, view in zip(_checkpoints(args, views), views):
        tables = _tables(ckpt, manifest, view)
        gallery, query = tables
        scores.append(cosine_scores(query, gallery))
        metrics['retrieval_{}'.format(view)] = _accuracy(
            gallery.labels[np.argmax(scores[-1], axis=1)], query.labels)
    if len(views) > 1:
        gallery, query = tables
        metrics['retrieval_fused'] = _accuracy(
            gallery.labels[fuse_view_scores(scores)], query.labels)
    return metrics


def cmd_finetune(args, settings):
    manifest = _load_manifest(args)
    views = _views(args, settings)
    cfg = ProbeConfig.from_settings(settings, 'finetune')
    fraction = (args.fraction if args.fraction is not None
                else settings['finetune']['label_fraction'])
    metrics = {'label_fraction': fraction}
    for ckpt, view in zip(_checkpoints(args, views), views):
        metrics['finetune_{}'.format(view)] = finetune(
            ckpt, manifest, fraction, cfg, view=view)
    return metrics


def _dbi(table):
    if len(np.unique(table.labels)) < 2:
        return float('nan')
    return davies_bouldin(table)


def cmd_dbi(args, settings):
    manifest = _load_manifest(args)
    views = _views(args, settings)
    split = 'test' if (manifest.items['split'] == 'test').any() else 'train'
    metrics = {}
    for ckpt, view in zip(_checkpoints(args, views), views):
        table = extract_embeddings(ckpt, manifest.subset(split), view)
        metrics['dbi_{}'.format(view)] = _dbi(table)
    return metrics


def evaluate_run(settings, manifest, workers=0):
    """Pre-train with ``settings`` and report probe, retrieval and DBI."""
    ckpt, _ = pretrain(manifest, TrainConfig(settings), workers=workers)
    view = settings['eval']['view']
    train, test = _tables(ckpt, manifest, view)
    probe = _accuracy(
        np.argmax(probe_scores(train, test,
                               ProbeConfig.from_settings(settings)), axis=1),
        test.labels)
    retrieval = _accuracy(
        train.labels[np.argmax(cosine_scores(test, train), axis=1)],
        test.labels)
    return probe, retrieval, _dbi(test)


def cmd_ablate(args, settings):
    if args.axis is None:
        raise UsageError('--axis is required, choose from {}'.format(
            sorted(ABLATION_AXES)))
    if args.axis not in ABLATION_AXES:
        raise UsageError('Unknown axis {!r}, choose from {}'.format(
            args.axis, sorted(ABLATION_AXES)))
    manifest = _load_manifest(args)
    values = (args.values.split(',') if args.values
              else ABLATION_AXES[args.axis])
    rows = []
    for value in values:
        value = value.strip()
        row_settings = configuration.read_configuration_file(
            overrides=ablation_overrides(args.axis, value), base=settings)
        logger.info('ablation %s = %s', args.axis, value)
        probe, retrieval, dbi = evaluate_run(row_settings, manifest,
                                             workers=args.workers)
        rows.append((args.axis, value, probe, retrieval, dbi))
    result = pd.DataFrame(
        rows, columns=['axis', 'value', 'probe', 'retrieval', 'dbi'])
    result.to_csv(os.path.join(args.out, 'ablation.csv'), index=False,
                  lineterminator='\n', encoding='utf-8')
    return {'rows': len(result)}


COMMANDS = {
    'synth': (cmd_synth, 'Write the synthetic benchmark dataset.'),
    'pretrain': (cmd_pretrain, 'Unsupervised pre-training.'),
    'embed': (cmd_embed, 'Export instance embeddings as CSV and EMB1.'),
    'probe': (cmd_probe, 'Linear evaluation on frozen features.'),
    'retrieve': (cmd_retrieve, 'Nearest neighbour retrieval.'),
    'finetune': (cmd_finetune, 'Fine-tune encoder and classifier.'),
    'dbi': (cmd_dbi, 'Davies Bouldin index of the embeddings.'),
    'ablate': (cmd_ablate, 'Sweep one ablation axis.')}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='Configuration file.')
    common.add_argument('--set', action='append', default=[],
                        metavar='SECTION.KEY=VALUE', dest='overrides',
                        help='Override one configuration key.')
    common.add_argument('--preset', choices=['desk'],
                        help='Start from a named set of overrides.')
    common.add_argument('--out', default='.', help='Output directory.')
    common.add_argument('--workers', type=int, default=0,
                        help='Data loading processes.')
    common.add_argument('-v', '--verbose', action='store_true')
    common.add_argument('--manifest', help='Manifest file or directory.')
    common.add_argument('--checkpoint', action='append', default=[],
                        help='Checkpoint; repeat to give one per view.')
    common.add_argument('--view', action='append', default=[],
                        choices=['joint', 'bone', 'motion'],
                        help='Skeleton view; repeat to fuse views.')

    parser = argparse.ArgumentParser(
        prog='hico', description='Hierarchical contrast for skeleton '
        'action representations.')
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True
    for name, (_, help_text) in COMMANDS.items():
        command = sub.add_parser(name, parents=[common], help=help_text)
        if name == 'pretrain':
            command.add_argument('--resume', help='Checkpoint to continue.')
        elif name == 'finetune':
            command.add_argument('--fraction', type=float,
                                 help='Fraction of labeled train items.')
        elif name == 'ablate':
            command.add_argument('--axis',
                                 help=', '.join(sorted(ABLATION_AXES)))
            command.add_argument('--values',
                                 help='Comma separated values of the axis.')
    return parser


def _setup_logging(verbose):
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(
        '%(asctime)s %(name)s %(levelname)s: %(message)s'))
    root = logging.getLogger('hico')
    root.handlers = [handler]
    root.setLevel(logging.DEBUG if verbose else logging.INFO)


def _record_run(args, settings):
    os.makedirs(args.out, exist_ok=True)
    configuration.write_configuration_file(
        settings, os.path.join(args.out, 'config.txt'))
    with open(os.path.join(args.out, 'versions.txt'), 'w',
              encoding='utf-8') as f:
        f.write('command: {}\n'.format(args.command))
        f.write('seed: {}\n'.format(settings['train']['seed']))
        f.write(versions_text())


def run(argv=None):
    """Run one command.

    Args:
        argv (list): Arguments without the program name.

    Returns:
        int: The exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    _setup_logging(args.verbose)
    try:
        settings = parse_config(args.config, args.overrides, args.preset)
        _record_run(args, settings)
        metrics = COMMANDS[args.command][0](args, settings)
        write_metrics(metrics, args.out)
    except (UsageError, UnknownConfigKey, ConfigValueError,
            IllegalArgumentCombination) as e:
        print('hico {}: error: {}'.format(args.command, e), file=sys.stderr)
        return 2
    except Exception as e:
        logger.debug('Traceback', exc_info=True)
        print('hico {}: error: {}: {}'.format(
            args.command, type(e).__name__, e), file=sys.stderr)
        return 1
    for key, value in metrics.items():
        logger.info('%s = %s', key, value)
    return 0


def main():
    sys.exit(run())
