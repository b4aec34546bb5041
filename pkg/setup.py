from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/cellular_towers/_poly_core.pyx",
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # pure-Python kernel is a full fallback; the extension is optional
    ext_modules = []

setup(ext_modules=ext_modules)
