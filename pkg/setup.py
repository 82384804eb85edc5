from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # the pure-Python kernel is used instead
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("sigforge.term_algebra._kernel",
                   ["src/sigforge/term_algebra/_kernel.pyx"], optional=True)],
        language_level=3,
    )

setup(ext_modules=ext_modules)
