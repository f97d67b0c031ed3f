#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Setup file for the hico package.
"""

from setuptools import setup, find_packages
from io import open  # pylint:disable=redefined-builtin
import version

MAIN_PACKAGE = 'hico'
DESCRIPTION = ("Hierarchical contrast for unsupervised representation "
               "learning of skeleton action sequences.")
LICENSE = 'LGPLv3'
INSTALL_REQUIRES = ['numpy', 'scipy>=1.0', 'pandas>=1.5', 'numba>=0.50',
                    'torch>=1.12']
EXTRAS_REQUIRE = {'test': ['pytest>=7']}
KEYWORDS = ['hico', 'skeleton', 'action recognition', 'contrastive',
            'self-supervised', 'momentum contrast', 'representation']

CLASSIFIERS = [
    'Development Status :: 3 - Alpha',
    'Environment :: Console',
    'Intended Audience :: Science/Research',
    'License :: OSI Approved :: GNU Lesser General Public License v3 (LGPLv3)',
    'Operating System :: Unix',
    'Operating System :: POSIX',
    'Operating System :: Microsoft :: Windows',
    'Natural Language :: English',
    'Programming Language :: Python',
    'Programming Language :: Python :: 3.8',
    'Programming Language :: Python :: 3.9',
    'Programming Language :: Python :: 3.10',
    'Programming Language :: Python :: 3.11',
    'Topic :: Scientific/Engineering :: Artificial Intelligence']


def readme():
    '''Return the contents of the README.md file.'''
    with open('README.md', encoding='utf-8') as freadme:
        return freadme.read()


def setup_package():
    setup(
        name=MAIN_PACKAGE,
        version=version.get_version(pep440=True),
        description=DESCRIPTION,
        include_package_data=True,
        keywords=KEYWORDS,
        license=LICENSE,
        long_description=readme(),
        long_description_content_type='text/markdown',
        classifiers=CLASSIFIERS,
        packages=find_packages('src'),
        package_dir={'': 'src'},
        python_requires='>=3.8',
        install_requires=INSTALL_REQUIRES,
        extras_require=EXTRAS_REQUIRE,
        entry_points={'console_scripts': ['hico=hico.cli:main']},
    )


if __name__ == "__main__":
    setup_package()
