from hico.training.train_config import TrainConfig

TINY = ['encoder.C=8', 'encoder.L=2', 'encoder.out_frames=8',
        'augment.out_frames=8', 'encoder.J=6', 'encoder.out_width=8',
        'contrast.dim=4', 'contrast.head_hidden=8',
        'train.queue_capacity=16', 'train.batch_size=2', 'train.epochs=1',
        'train.lr_decay_epochs=', 'train.dtype=float64']


def tiny_train_config(*overrides):
    return TrainConfig.from_overrides(*(TINY + list(overrides)))
