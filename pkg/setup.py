import os

from setuptools import setup, find_packages

here = os.path.abspath(os.path.dirname(__file__))
with open(os.path.join(here, 'README.txt')) as f:
    README = f.read()
with open(os.path.join(here, 'CHANGES.txt')) as f:
    CHANGES = f.read()

requires = [
    'numpy >= 1.24',
    'scipy >= 1.10',
    'marshmallow >= 3.13',
    'plaster_pastedeploy',
]

tests_require = [
    'pytest>=3.7.4',
    'pytest-cov',
    'pytest-mock',
]

setup(
    name='dssy_bench',
    version='0.1',
    description='DSSY nonconforming quadrilateral elements and benchmarks',
    long_description=README + '\n\n' + CHANGES,
    classifiers=[
        'Programming Language :: Python',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    author='',
    author_email='',
    url='',
    keywords='finite elements nonconforming quadrilateral dssy',
    packages=find_packages(),
    include_package_data=True,
    zip_safe=False,
    python_requires='>=3.10',
    extras_require={
        'testing': tests_require,
    },
    install_requires=requires,
    entry_points={
        'console_scripts': [
            'dssy-bench=dssy_bench.scripts.bench:main',
        ],
    },
)
