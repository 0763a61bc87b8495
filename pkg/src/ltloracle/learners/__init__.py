from .evaluate import EvalReport, evaluate, read_report, write_report
from .forest import RFModel, train_rf
from .knn import KNNModel, train_knn
from .logistic import LRModel, gradient_descent, loss_and_grad, train_lr
from .metrics import accuracy, auc, auc_exact
from .model import ALGORITHMS, DEFAULT_PARAMS, TrainedModel, dump_model, load_model, train
from .split import SplitSpec, split, split_indices
from .tree import DTModel, train_dt

__all__ = [
    "EvalReport", "evaluate", "read_report", "write_report", "RFModel", "train_rf",
    "KNNModel", "train_knn", "LRModel", "gradient_descent", "loss_and_grad", "train_lr",
    "accuracy", "auc", "auc_exact", "ALGORITHMS", "DEFAULT_PARAMS", "TrainedModel",
    "dump_model", "load_model", "train", "SplitSpec", "split", "split_indices",
    "DTModel", "train_dt",
]
