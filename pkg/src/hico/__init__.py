from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("hico")
except PackageNotFoundError:
    __version__ = "unknown"


def export(func):
    if callable(func) and hasattr(func, '__name__'):
        globals()[func.__name__] = func
    try:
        __all__.append(func.__name__)
    except NameError:
        __all__ = [func.__name__]
    return func

# have to be imported after export definition
import hico.utilities
from hico.utilities._print_versions import show_versions
from hico.skeleton_sequences.sequence_class_main import SkeletonSequence
from hico.skeleton_sequences.topology import SkeletonTopology
from hico.skeleton_sequences.dataset import DatasetManifest, synth_dataset
import hico.skeleton_sequences.sequence_functions as sequence_functions
from hico.augmentation.augmentations import AugmentConfig, make_views
from hico.encoder.encoder_config import EncoderConfig
from hico.encoder.hierarchical_encoder import (HierarchicalEncoder,
                                               MultiLevelEmbedding,
                                               hico_forward)
from hico.contrast.moco import HierarchicalMoCo
from hico.contrast.queue import ContrastQueue
from hico.training.train_config import TrainConfig
from hico.training.checkpoint import Checkpoint
from hico.training.pretraining import pretrain
from hico.evaluation.embedding_table import EmbeddingTable
from hico.evaluation.protocols import (ProbeConfig, linear_probe,
                                       retrieve_1nn, finetune)
from hico.evaluation.clustering import davies_bouldin
import hico.configuration as configuration
from hico.configuration import settings
import hico.constants

import sys
sys.modules['hico.sequence_functions'] = sequence_functions
