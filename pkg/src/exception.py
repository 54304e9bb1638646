import sys


# Creating function for error message detail
def error_message_detail(error, error_detail: sys):
    '''
    Return the error message decorated with the file name and line number of
    the traceback currently being handled. Outside an except block there is
    no traceback and the message is returned unchanged.
    '''
    _, _, exc_tb = error_detail.exc_info()
    if exc_tb is None:
        return str(error)
    file_name = exc_tb.tb_frame.f_code.co_filename
    line_no = exc_tb.tb_lineno
    error_message = "Error occured in python script name {0} line number [{1}] error message [{2}]".format(
        file_name, line_no, str(error))
    return error_message


class CustomException(Exception):
    '''
    Base class of every error raised by pblab
    '''

    def __init__(self, error_message, error_detail: sys = sys):
        super().__init__(error_message)
        self.error_message = error_message_detail(
            error_message, error_detail=error_detail)

    def __str__(self):
        return self.error_message


class InvalidArgumentError(CustomException):
    '''Argument outside the documented domain of an operation'''


class UnsupportedGridError(CustomException):
    '''Operation needs a grid scheme the caller did not supply (FD on Gauss-Legendre nodes)'''


class DegenerateGramError(CustomException):
    '''A Gram or metric matrix lost positive definiteness'''


class ConvergenceError(CustomException):
    '''
    An iterative kernel ran out of sweeps or iterations.

    partial holds whatever was already deflated or converged, so callers can
    still report it.
    '''

    def __init__(self, error_message, partial=None, error_detail: sys = sys):
        super().__init__(error_message, error_detail)
        self.partial = partial


class NonNormalizableFamilyError(CustomException):
    '''Laguerre order gamma <= -1: the eigenfamily is not square integrable'''


class ModelInconsistencyError(CustomException):
    '''A model relation that must hold by construction was measured to fail'''


class ConfigError(CustomException):
    '''Unreadable, malformed or invalid run configuration'''
