#!/usr/bin/env python3
import os

from setuptools import setup


def readme_content():
    dir = os.path.abspath(os.path.dirname(__file__))
    desc = None
    with open(os.path.join(dir, "README.md"), "r") as f:
        desc = f.read()

    return desc


setup(
    name="elementary_groups",
    version="0.1.0",
    packages=["elementary_groups"],
    entry_points={"console_scripts": ["egroups=elementary_groups.cli:main"]},
    install_requires=["numpy>=1.22", "sympy>=1.10"],
    python_requires=">=3.8",
    long_description=readme_content(),
    long_description_content_type="text/markdown",
    keywords="elementary matrices unitary groups form rings commutator k-theory",
    license="MIT",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Natural Language :: English",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3 :: Only",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
