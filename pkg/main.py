import sys

from ulrich.cli import main, get_args

################

if __name__ == '__main__':
    sys.exit(main(get_args()))
