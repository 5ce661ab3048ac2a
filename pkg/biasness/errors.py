class BiasnessError(Exception):
    pass

class DimensionError(BiasnessError):
    pass

class InvalidStateError(BiasnessError):
    pass

class NotHermitianError(InvalidStateError):
    pass

class NotPositiveError(InvalidStateError):
    pass

class NumericError(BiasnessError):
    def __init__(self, message, matrix=None):
        super(NumericError, self).__init__(message)
        self.matrix = matrix

class ChannelError(BiasnessError):
    pass

class NoiseStrengthError(ChannelError):
    pass

class UnknownFamilyError(ChannelError):
    pass

class OptimizerError(BiasnessError):
    pass

class ConfigError(BiasnessError):
    pass

class CsvFormatError(BiasnessError):
    pass
