from ._xlambda import *  # noqa: F401,F403
