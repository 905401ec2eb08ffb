#!/usr/bin/env python3
"""
rtz - packaging script
Installs the rtz package and the `rtz` console command
"""

from pathlib import Path

from setuptools import find_packages, setup

HERE = Path(__file__).resolve().parent


def read_requirements(name):
    """Pinned requirements, comments and includes dropped"""
    lines = (HERE / name).read_text().splitlines()
    return [
        line.strip() for line in lines
        if line.strip() and not line.startswith(('#', '-r'))
    ]


setup(
    name='rtz',
    version='1.0.0',
    description='Exact zero-location certificates for Ramanujan-type polynomials',
    long_description=(HERE / 'README.md').read_text(encoding='utf-8'),
    long_description_content_type='text/markdown',
    python_requires='>=3.9',
    packages=find_packages(exclude=('tests', 'tests.*')),
    install_requires=read_requirements('requirements.txt'),
    extras_require={'dev': read_requirements('requirements-dev.txt')},
    package_data={'rtz': ['schemas/*.json']},
    include_package_data=True,
    entry_points={'console_scripts': ['rtz=rtz.cli:main']},
)
