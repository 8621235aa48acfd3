from utsuper.charoracle import irr_table, mackey_inner  # noqa: F401,E402
from utsuper.cli import main  # noqa: F401,E402
from utsuper.polycount import n_second, n_third, n_top  # noqa: F401,E402
from utsuper.rootsys import Root  # noqa: F401,E402
from utsuper.suites import run_suite  # noqa: F401,E402
from utsuper.superalg import expr_from_factors, tensor_normalize  # noqa: F401,E402
from utsuper.version import version  # noqa: F401,E402
