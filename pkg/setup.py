from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # No Cython: install the pure-Python kernel only.
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("ratground._ratcore_cy", ["src/ratground/_ratcore_cy.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
