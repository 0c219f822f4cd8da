from setuptools import Extension, setup

setup(
    ext_modules=[
        Extension("threepage._kernel", ["src/threepage/_kernel.c"], optional=True,
                  extra_compile_args=["-O2"]),
    ]
)
