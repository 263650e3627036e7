try:
    from ._spreadlab import *  # noqa: F401,F403
except ImportError:  # in-tree builds put the module on sys.path directly
    from _spreadlab import *  # noqa: F401,F403
