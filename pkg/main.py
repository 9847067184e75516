import sys

from src.harness import HarnessApp

if __name__ == '__main__':
    app = HarnessApp()
    sys.exit(app.run())
