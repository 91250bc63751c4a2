from setuptools import find_packages, setup

__version__ = "1.0.0"

setup(
    # package name in pypi
    name="django-htheorem",
    # extract version from module.
    version=__version__,
    description="Numerical verification that diagonal-preserving interactions induce unital quantum channels",
    long_description=open("README.rst", encoding="utf-8").read(),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Framework :: Django",
        "Framework :: Django :: 3.2",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Operating System :: Unix",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    python_requires=">=3.8",
    keywords="quantum channel, unitality, entropy, open quantum systems",
    license="BSD",
    packages=find_packages(
        exclude=[
            "*tests.unit",
            "*tests.doctests*",
            "*sandbox*",
        ]
    ),
    # include non python files
    include_package_data=True,
    package_data={"htheorem": ["fixtures/specs/*.json"]},
    zip_safe=False,
    # specify dependencies
    install_requires=[
        "Django>=3.2",
        "djangorestframework>=3.9",
        "numpy>=1.22",
    ],
    entry_points={
        "console_scripts": ["htheorem=htheorem.cli:main"],
    },
    # mark test target to require extras.
    extras_require={
        "dev": [
            "coverage",
            "wheel",
            "pylint",
            "pylint-django",
            "black>=23.1.0",
            "pytest",
            "pytest-django",
        ],
    },
)
