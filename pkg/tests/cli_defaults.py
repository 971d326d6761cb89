from qes_workbench.cli import _level_params


def level_params(system, N):
    return _level_params(system, N)
