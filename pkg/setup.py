#!/usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup

with open('README.md') as readme_file:
    readme = readme_file.read()

requirements = [
    "numpy>=1.25",
    "pandas",
    "psutil",
    "sympy>=1.12",
]

setup(
    name='ulrich',
    version='0.1.0',
    description="Exact matrix factorizations and Ulrich certificates for cyclic covers",
    long_description=readme,
    long_description_content_type='text/markdown',
    packages=['ulrich', 'instances'],
    include_package_data=True,
    install_requires=requirements,
    extras_require={'tests': ['pytest']},
    entry_points={'console_scripts': ['ulrich=ulrich.cli:run']},
    python_requires='>=3.9',
    zip_safe=False,
    keywords='matrix factorization Ulrich sheaf cyclic cover',
    classifiers=[
        'Intended Audience :: Science/Research',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
