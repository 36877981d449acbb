# -*- coding: utf-8 -*-
"""ASBG toolkit

Difference-1 (and difference-k) colourings of bipartite graphs, their
alternating signed bipartite graph configurations, and the alternating
sign matrices they encode.

.. note:: This program is free software; you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation; either version 2 of the License, or
(at your option) any later version.
"""

# This will get replaced with a git SHA1 when you do a git archive
__revision__ = '$Format:%H$'


def main():
    """
    Runs the command line front end
    """
    # pylint: disable=import-outside-toplevel
    from asbg.cli import main as cli_main

    return cli_main()
