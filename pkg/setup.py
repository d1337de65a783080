"""Build script for the optional compiled assembly kernels.

The package is fully functional without the extension: mmfd._kernels falls
back to the NumPy reference implementation when the compiled module is
missing (see src/mmfd/_kernels/__init__.py).
"""

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "mmfd._kernels._ext",
                ["src/mmfd/_kernels/_ext.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
