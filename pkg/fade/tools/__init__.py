"""
Reading and writing run configurations via :py:mod:`.json_io`.
Experiment drivers in :py:mod:`.worker_utils` and the ``fade`` command line in :py:mod:`.cli`.
"""
