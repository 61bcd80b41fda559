import sys

template = """:orphan:

%s
%s

.. literalinclude:: ../../../%s
   :language: python
   :linenos:

"""

script_name = sys.argv[1]
title = sys.argv[2] if len(sys.argv) > 2 else script_name
with open(script_name+'.rst', 'w') as file:
    file.write(template % (title, '#'*len(title), script_name))
