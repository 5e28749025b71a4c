from .functions import bessel_j0, gamma_arg_one_minus_i, incomplete_elliptic_e, struve_h0
from .heun import HeunParams, heun_c, heun_local_pair
