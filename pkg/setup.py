import os
from setuptools import find_packages
from setuptools import setup

version = '0.1.dev1'

here = os.path.abspath(os.path.dirname(__file__))
try:
    README = open(os.path.join(here, 'README.rst')).read()
    CHANGES = open(os.path.join(here, 'CHANGES.rst')).read()
except IOError:
    README = CHANGES = ''

install_requires = [
    'numpy',
    ]

tests_require = [
    'hypothesis',
    'mock',
    'pycodestyle',
    'pytest',
    'pytest-cov',
    ]

setup(
    name="hitkernel",
    version=version,
    description="A small proof checker for dependent type theory with a "
                "quotient type",
    long_description="\n\n".join([README, CHANGES]),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
        ],
    keywords="type theory, proof checker, higher inductive types",
    license="MIT",
    packages=find_packages(),
    package_data={
        'hitkernel.stdlib': ['*.hk', 'manifest.json'],
        },
    include_package_data=False,
    zip_safe=False,
    python_requires='>=3.7',
    install_requires=install_requires,
    extras_require={
        'testing': tests_require,
        },
    entry_points={
        'console_scripts': ['hitkernel = hitkernel.cli:main'],
        },
    )
