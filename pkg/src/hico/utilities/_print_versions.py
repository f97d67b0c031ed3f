# -*- coding: utf-8 -*-
import importlib
import json
import locale
import os
import platform
import struct
import sys

DEPENDENCIES = ('hico', 'numpy', 'scipy', 'pandas', 'numba', 'torch',
                'pytest', 'pip', 'setuptools')


def get_sys_info():
    """Interpreter and platform as list of pairs."""
    uname = platform.uname()
    return [
        ('python', '.'.join(str(x) for x in sys.version_info)),
        ('python-bits', struct.calcsize('P') * 8),
        ('OS', uname.system),
        ('OS-release', uname.release),
        ('machine', uname.machine),
        ('processor', uname.processor),
        ('LC_ALL', os.environ.get('LC_ALL')),
        ('LANG', os.environ.get('LANG')),
        ('LOCALE', '.'.join(str(x) for x in locale.getlocale()))]


def _module_version(name):
    try:
        module = sys.modules.get(name) or importlib.import_module(name)
        return getattr(module, '__version__', None)
    except Exception:
        return None


def get_deps_info():
    return [(name, _module_version(name)) for name in DEPENDENCIES]


def versions_text():
    """The report written next to the outputs of every command."""
    lines = ['INSTALLED VERSIONS', '------------------']
    lines += ['{}: {}'.format(k, v) for k, v in get_sys_info()]
    lines.append('')
    lines += ['{}: {}'.format(k, v) for k, v in get_deps_info()]
    return '\n'.join(lines) + '\n'


def show_versions(as_json=False):
    """Print the versions of hico, python and the dependencies.

    Args:
        as_json (bool or str): Print a JSON dict, or write it to the
            file of that name.
    """
    if not as_json:
        print('\n' + versions_text())
        return
    info = {'system': dict(get_sys_info()),
            'dependencies': dict(get_deps_info())}
    if as_json is True:
        print(info)
    else:
        with open(as_json, 'w', encoding='utf-8') as f:
            json.dump(info, f, indent=2)
