"""Decision rule systems compiled into decision trees and decision graphs."""

try:
    from ruletree._core import *  # noqa: F401,F403  (installed layout)
    from ruletree._core import __version__  # noqa: F401
except ImportError:  # in-build layout: the extension sits next to the package
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
