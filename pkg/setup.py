#! /usr/bin/env python3
# -*- coding: utf8 -*-

import os
import sys
from setuptools import setup


try:
   os.chdir(os.path.dirname(sys.argv[0]))
except:
   pass


def read(fname):
    return open(os.path.join(os.path.dirname(__file__), fname)).read()

setup(
    name = "HyperSpinor",
    version = "0.1.0", #also update hyperspinor.py VERSION variable!
    description = ("Harmonic analysis on the spinor bundle over hyperbolic space: spin representations, Vahlen groups, spherical functions and the Poisson and Fourier transforms, with a numerical verification runner"),
    license = "GPL",
    keywords = "harmonic analysis hyperbolic space spinors clifford algebra vahlen spherical functions jacobi functions poisson transform",
    packages=['hyperspinor','hyperspinor.helpers','hyperspinor.scenarios'],
    long_description=read('README.md'),
    long_description_content_type="text/markdown",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
        "Operating System :: POSIX",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
    ],
    entry_points = {
        'console_scripts': [
            'hyperspinor = hyperspinor.hyperspinor:main'
        ]
    },
    package_data = {'hyperspinor':['defaults.yml'] },
    install_requires=['numpy >= 1.17','scipy >= 1.4','pyyaml','psutil']
)
