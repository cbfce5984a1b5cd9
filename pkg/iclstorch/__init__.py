from .version import __version__

import torch
from iclstorch.la import *
from iclstorch.ls import *
from iclstorch.ssl import *
from iclstorch.theory import *
from iclstorch.bench import *
from iclstorch.utils import *
