#!/usr/bin/env python
# encoding=utf-8
import os
from setuptools import setup

here = os.path.abspath(os.path.dirname(__file__))
README = open(os.path.join(here, 'README.md')).read()

setup(name='cssqec',
      version='0.1.0',  # Use bumpversion to update
      description='CSS quantum error-correcting codes from nested classical codes, with statevector simulation.',
      long_description=README,
      long_description_content_type='text/markdown',
      classifiers=[
          'Programming Language :: Python',
          'Programming Language :: Python :: 3.8',
          'Programming Language :: Python :: 3.9',
          'Programming Language :: Python :: 3.10',
          'Programming Language :: Python :: 3.11',
          'Topic :: Scientific/Engineering :: Physics',
      ],
      keywords='quantum error correction css codes',
      license='MIT',
      python_requires='>=3.8',
      install_requires=['numpy',
                        'scipy',
                        'tqdm',
                        'pyyaml',
                        'colorama',
                        'coloredlogs',
                        'raven',
                        'diskcache',
                        ],
      setup_requires=['pytest-runner'],
      tests_require=['pytest', 'pytest-pycodestyle', 'pytest-cov', 'mock'],
      entry_points={'console_scripts': ['cssqec=cssqec.cssqec:main']},
      options={
          'build_scripts': {
              'executable': '/usr/bin/env python',
          },
      },
      packages=['cssqec']
      )
