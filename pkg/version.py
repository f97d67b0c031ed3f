#!/usr/bin/env python
"""Version of the package.

Inside a tagged git checkout the version comes from ``git describe``,
otherwise from the ``VERSION`` file next to this script.
Run this script to write the current release version into ``VERSION``.
"""
import os
import subprocess

__all__ = ("get_version",)

HERE = os.path.dirname(os.path.abspath(__file__))
VERSION_FILE = os.path.join(HERE, "VERSION")


def git_describe(abbrev=7):
    try:
        out = subprocess.run(
            ["git", "describe", "--tags", "--abbrev={}".format(abbrev)],
            cwd=HERE, stdout=subprocess.PIPE, stderr=subprocess.DEVNULL,
            check=True)
    except (OSError, subprocess.CalledProcessError):
        return None
    return out.stdout.decode("ascii").strip() or None


def describe_to_version(described, pep440=False):
    """``v0.2.0-3-gabc1234`` becomes ``0.2.0.post3+gitabc1234``.

    With ``pep440`` the local part after ``+`` is dropped.
    """
    if described is None:
        return None
    tag, _, rest = described.lstrip("v").partition("-")
    if not rest:
        return tag
    distance, _, githash = rest.partition("-g")
    version = "{}.post{}".format(tag, distance)
    return version if pep440 else "{}+git{}".format(version, githash)


def read_release_version():
    try:
        with open(VERSION_FILE) as f:
            return f.read().strip() or None
    except IOError:
        return None


def get_version(pep440=False):
    """Return the version string.

    Args:
        pep440 (bool): Leave out the git hash, as required for releases.
    """
    version = describe_to_version(git_describe(), pep440=pep440)
    return read_release_version() if version is None else version


if __name__ == "__main__":
    with open(VERSION_FILE, "w") as f:
        f.write(get_version(pep440=True) + "\n")
