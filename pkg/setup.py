from setuptools import Extension, setup

# The compiled kernel is optional: wirelab falls back to the pure-Python
# backend when the extension is unavailable.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "wirelab._kernels._ckernels",
                ["src/wirelab/_kernels/_ckernels.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
