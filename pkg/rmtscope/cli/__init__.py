from .config import ExperimentConfig, load_config
from .outputs import ArtifactWriter
from .workflows import WORKFLOWS
