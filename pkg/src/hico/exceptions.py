# -*- coding: utf-8 -*-

# Errorcodes are there for the jit_functions
ERR_CODE_OK = 0


class FormatError(Exception):
    """Raised when a file does not follow the binary layout it claims to
    have, e.g. a wrong magic number or an impossible header.

    May carry the attribute ``path`` of the offending file.
    """
    def __init__(self, message='', path=None):
        self.message = message
        self.path = path

    def __str__(self):
        if self.path is None:
            return repr(self.message)
        return '{}: {!r}'.format(self.path, self.message)


class CheckpointVersionMismatch(FormatError):
    """Raised when a checkpoint was written with another format version.

    """
    def __init__(self, found, expected, path=None):
        message = ('Checkpoint format version {} can not be read, '
                   'expected version {}').format(found, expected)
        super(CheckpointVersionMismatch, self).__init__(message, path=path)
        self.found = found
        self.expected = expected


class TruncatedPayload(IOError):
    """Raised when a file ends before the payload announced in its header.

    """
    def __init__(self, message='', expected=None, received=None):
        super(TruncatedPayload, self).__init__(message)
        self.message = message
        self.expected = expected
        self.received = received


class ShapeMismatch(ValueError):
    """Raised if arrays or sequences have shapes that can not be combined.

    """
    pass


class IllegalArgumentCombination(ValueError):
    """Raised if the combination of correctly typed arguments is invalid.

    """
    pass


ERR_CODE_InvalidTopology = 200


class InvalidTopology(ShapeMismatch):
    """Raised when a list of edges does not describe a tree over the joints.

    May carry the attribute ``joint`` with the first offending joint.
    """
    def __init__(self, message, joint=None):
        super(InvalidTopology, self).__init__(message)
        self.message = message
        self.joint = joint


class DegenerateProjection(ArithmeticError):
    """Raised when a projected feature has zero norm and can not be
    mapped onto the unit sphere. The batch has to be rejected.
    """
    pass


class NonFiniteLoss(ArithmeticError):
    """Raised when the contrastive loss becomes NaN or infinite.

    Carries the attribute ``step`` with the global step index.
    """
    def __init__(self, step, value=None):
        self.step = step
        self.value = value

    def __str__(self):
        return 'Non-finite loss {} at step {}'.format(self.value, self.step)


class NonFiniteGradient(ArithmeticError):
    """Raised before an optimizer step if a gradient is NaN or infinite.

    Carries the attribute ``name`` of the first affected parameter.
    """
    def __init__(self, name):
        self.name = name

    def __str__(self):
        return 'Non-finite gradient for parameter {}'.format(self.name)


class UnknownConfigKey(KeyError):
    """Raised for configuration keys that do not exist.

    Carries the attributes ``key`` and ``valid_keys``.
    """
    def __init__(self, key, valid_keys):
        self.key = key
        self.valid_keys = sorted(valid_keys)

    def __str__(self):
        return 'Unknown configuration key {!r}. Valid keys are: {}'.format(
            self.key, ', '.join(self.valid_keys))


class ConfigValueError(ValueError):
    """Raised when a configuration value can not be converted to the type
    of its key.
    """
    def __init__(self, key, value, valid_keys=()):
        self.key = key
        self.value = value
        self.valid_keys = sorted(valid_keys)

    def __str__(self):
        message = 'Can not parse value {!r} for key {!r}'.format(
            self.value, self.key)
        if self.valid_keys:
            message += '. Valid keys are: ' + ', '.join(self.valid_keys)
        return message


class PhysicalMeaning(ValueError):
    """Raised when data is corrupted in a way, that it can not carry
    any information of physical meaning, e.g. NaN coordinates.

    """
    pass
