from setuptools import setup, find_packages


setup(
    name='jcentropy',
    use_scm_version=True,
    description="Entropies and correlations of the Jaynes-Cummings model",
    long_description=open('README.rst').read(),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Environment :: Console",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    keywords='quantum optics jaynes-cummings entropy entanglement',
    license='MIT',
    packages=find_packages(exclude=['ez_setup', 'examples', 'tests', 'doc']),
    include_package_data=True,
    zip_safe=False,
    python_requires='>=3.8',
    setup_requires=["setuptools_scm"],
    install_requires=[
        'numpy>=1.20',
        'scipy>=1.6',
        'pandas>=1.5',
        'SQLAlchemy>=1.4',
    ],
    entry_points="""
    # -*- Entry points: -*-
    [console_scripts]
    jc-entropy = jcentropy.cli:main
    """,
)
