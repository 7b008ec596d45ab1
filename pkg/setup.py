"""netcap: Upper bounds and network codes for network function computation. """

from setuptools import find_packages, setup

#####################################
VERSION = "0.1.0"
ISRELEASED = True
if ISRELEASED:
    __version__ = VERSION
else:
    __version__ = VERSION + ".dev0"
#####################################


setup(
    name="netcap",
    version=__version__,
    description=__doc__.split("\n")[0],
    long_description=__doc__,
    author="The netcap developers",
    packages=find_packages(),
    package_data={
        "netcap": [
            "problems/json/*.json",
            "tests/files/*.json",
        ]
    },
    entry_points={
        "console_scripts": [
            "netcap = netcap.cli:main",
        ]
    },
    package_dir={"netcap": "netcap"},
    include_package_data=True,
    install_requires=[
        "networkx>=2.5",
        "numpy",
        "galois",
        "more-itertools",
        "setuptools",
    ],
    python_requires=">=3.8",
    license="MIT",
    zip_safe=False,
    keywords="netcap",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Intended Audience :: Developers",
        "License :: OSI Approved :: MIT License",
        "Natural Language :: English",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Operating System :: Microsoft :: Windows",
        "Operating System :: POSIX",
        "Operating System :: Unix",
        "Operating System :: MacOS",
    ],
)
