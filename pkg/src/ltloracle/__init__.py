"""Predict LTL model-checking verdicts with classical classifiers.

Subpackages:

* :mod:`ltloracle.logic` -- formulas, Kripke structures, seeded generators
* :mod:`ltloracle.checker` -- automata-theoretic checker plus a reference oracle
* :mod:`ltloracle.smv` -- NuSMV file emitter and external runner
* :mod:`ltloracle.features` -- fixed-width numeric encoding of instances
* :mod:`ltloracle.learners` -- DT, RF, KNN and LR from scratch, metrics, splits
* :mod:`ltloracle.pipeline` -- dataset files, experiment commands and the CLI
"""

__version__ = "0.1.0"
