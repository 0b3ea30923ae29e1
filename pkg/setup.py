from setuptools import setup, find_packages

import ppmadc

with open("README.md", "r") as readme:
    LONG_DESCRIPTION = readme.read()

setup(
    name="ppmadc",
    version=ppmadc.__version__,
    license="MIT",
    description="Placement delivery arrays and private multi-access "
                "distributed computing",
    long_description=LONG_DESCRIPTION,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=("tests",)),
    include_package_data=True,
    entry_points={
        "console_scripts": [
            "ppmadc = ppmadc.__main__:main"
        ]
    },
    python_requires=">=3.8",
    install_requires=[
        "colorama",
        "numpy",
        "scipy"
    ],
    classifiers=[
        "Development Status :: 3 - Alpha",
        "License :: OSI Approved :: MIT License",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Information Analysis",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3 :: Only",
        "Programming Language :: Python :: 3.8",
    ]
)
