class InvalidConfigError(RuntimeError):

    def __init__(self, msg, key=None):
        super(InvalidConfigError, self).__init__(msg)
        self.key = key


class InadmissibleParametersError(InvalidConfigError):

    def __init__(self, alpha=None, beta=None, gamma=None, **kwargs):
        msg = kwargs.get('message')
        if msg is None:
            msg = 'inadmissible parameters (alpha, beta, gamma) = (%s, %s, %s): ' \
                  'alpha, beta, gamma must be 0 or 1 and alpha + beta != 2' % (alpha, beta, gamma)
        super(InadmissibleParametersError, self).__init__(msg, key=kwargs.get('key'))
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma


class UnknownEquationError(InvalidConfigError):

    def __init__(self, name=None, **kwargs):
        if name is None:
            msg = 'Could not resolve an equation for the given parameters.'
        else:
            msg = 'Unknown equation "%s".' % name
        super(UnknownEquationError, self).__init__(msg, key=kwargs.get('key'))
        self.name = name


class OutputError(InvalidConfigError):
    pass


class InvalidFieldError(ValueError):
    pass


class RangeError(ValueError):

    def __init__(self, msg='not in range of -Delta', mean=None):
        super(RangeError, self).__init__(msg)
        self.mean = mean


class InvalidStateError(ValueError):
    pass


class BlowUpError(RuntimeError):

    def __init__(self, t, trajectory=None, cause=None):
        super(BlowUpError, self).__init__('blow-up/instability detected at t=%.6g' % t)
        self.t = t
        self.trajectory = trajectory
        self.cause = cause


class DiffeomorphismError(RuntimeError):

    def __init__(self, msg=None, t=None, trajectory=None):
        if msg is None:
            msg = 'diffeomorphism breakdown at t=%.6g' % t if t is not None else 'diffeomorphism breakdown'
        super(DiffeomorphismError, self).__init__(msg)
        self.t = t
        self.trajectory = trajectory


class VerificationError(RuntimeError):

    def __init__(self, msg, check=None):
        super(VerificationError, self).__init__(msg)
        self.check = check
