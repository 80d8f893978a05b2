#!/usr/bin/env python
# encoding=utf-8
from __future__ import print_function
import os
import sys

try:
    from setuptools import setup
except ImportError:
    print("This package requires 'setuptools' to be installed.")
    sys.exit(1)

here = os.path.abspath(os.path.dirname(__file__))
README = open(os.path.join(here, 'README.rst')).read()

setup(name='torusch',
      version='0.1.0',  # Use bumpversion to update
      description='Spectral simulation and verification of Camassa-Holm type systems on the flat torus',
      long_description=README,
      classifiers=[
          'Programming Language :: Python',
          'Programming Language :: Python :: 3.8',
          'Programming Language :: Python :: 3.9',
          'Programming Language :: Python :: 3.10',
          'Topic :: Scientific/Engineering :: Mathematics',
      ],
      keywords='camassa-holm hunter-saxton euler-arnold spectral geodesic',
      license='MIT',
      install_requires=['numpy>=1.17',
                        'pyyaml',
                        ],
      setup_requires=['pytest-runner>=2.9'],
      tests_require=['pytest', 'pytest-cov'],
      packages=['torusch'],
      entry_points={'console_scripts': ['torusch=torusch.torusch:main']},
      package_data={
          'torusch': ['equations.yml']
      },
      include_package_data=True
      )
